"""Brute-force ground truth for normalisers and intersections.

Everything here trades speed for being obviously correct: group elements
come from plain multiplication closure of the generators, the ambient
symmetric group is walked in lexicographic image order with an iterative
successor, and membership is set lookup on image tuples.  The stabilizer
chain machinery is deliberately not used, so these functions can certify
it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded, DegreeMismatch
from .group import GeneratedGroup, reduce_generators
from .perm import Perm, iter_symmetric


@dataclass(frozen=True)
class OracleBudget:
    """Hard limits for the exhaustive searches."""

    max_degree: int = 8
    max_order: int = 10**5


DEFAULT_BUDGET = OracleBudget()


def closure_elements(group: GeneratedGroup, max_order: int) -> set[tuple[int, ...]]:
    """All element image tuples, by breadth-first multiplication closure."""
    degree = group.degree
    identity = tuple(range(degree))
    gens = [g.images for g in group.generators if not g.is_identity()]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = tuple(b[i] for i in a)
                if c not in seen:
                    if len(seen) >= max_order:
                        raise BudgetExceeded(
                            f"group order exceeds oracle budget {max_order}"
                        )
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def brute_force_normaliser(
    group: GeneratedGroup, budget: OracleBudget = DEFAULT_BUDGET
) -> GeneratedGroup:
    """N_{Sym(n)}(G) by testing every element of Sym(n)."""
    degree = group.degree
    if degree > budget.max_degree:
        raise BudgetExceeded(
            f"degree {degree} exceeds oracle budget {budget.max_degree}"
        )
    members = closure_elements(group, budget.max_order)
    gens = [g.images for g in group.generators if not g.is_identity()]
    accepted = []
    for sigma in iter_symmetric(degree):
        s = sigma.images
        inv = [0] * degree
        for i, img in enumerate(s):
            inv[img] = i
        ok = True
        for x in gens:
            conj = tuple(s[x[inv[i]]] for i in range(degree))
            if conj not in members:
                ok = False
                break
        if ok:
            accepted.append(sigma)
    result = GeneratedGroup(degree, reduce_generators(accepted, degree))
    if result.order() != len(accepted):
        raise AssertionError("normaliser closure disagrees with accepted count")
    return result


def brute_force_intersection(
    a: GeneratedGroup, b: GeneratedGroup, budget: OracleBudget = DEFAULT_BUDGET
) -> GeneratedGroup:
    """A meet B by enumerating the smaller group's elements."""
    if a.degree != b.degree:
        raise DegreeMismatch("intersection of groups on different point sets")
    small, large = (a, b) if a.order() <= b.order() else (b, a)
    small_elems = closure_elements(small, budget.max_order)
    large_elems = closure_elements(large, budget.max_order)
    common = [Perm(images) for images in sorted(small_elems & large_elems)]
    return GeneratedGroup(a.degree, reduce_generators(common, a.degree))


def verify_normalises(candidate: Perm, group: GeneratedGroup) -> bool:
    """Conjugation by the candidate maps the group onto itself.

    Checking generators suffices: if every x^h lies in G then G^h is a
    subgroup of G of the same order.
    """
    if candidate.degree != group.degree:
        return False
    return all(group.member(x.conjugate(candidate)) for x in group.generators)
