"""Structural analysis used to route normaliser computations.

Minimal normal subgroups drive everything else here.  Any nontrivial
element of a minimal normal subgroup has that whole subgroup as its normal
closure, so closures of prime-order elements find every candidate, and the
inclusion-minimal closures are exactly the minimal normal subgroups.  For
orders where full enumeration is affordable this is carried out per
conjugacy class and is exact; beyond that, prime-order elements are
manufactured from seeded random samples by powering, and the candidate set
is kept until it survives a stability window.  Callers that need a
guarantee (socle factorisations) check an independent certificate, so a
sampling miss can cost a retry but never a wrong answer.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    ContractViolation,
    ImprimitiveInput,
    IntransitiveInput,
    TrivialInput,
)
from .group import (
    GeneratedGroup,
    StabilizerChain,
    build_chain,
    is_subgroup,
    reduce_generators,
)
from .perm import Perm

EXACT_ORDER_LIMIT = 50_000
_SAMPLE_SEED = 1729
_STABILITY_WINDOW = 12


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _prime_order_class_representatives(group: GeneratedGroup) -> list[Perm]:
    """One representative per conjugacy class of prime-order elements."""
    reps = []
    seen: set[tuple[int, ...]] = set()
    for g in group.elements():
        if g.images in seen or g.is_identity():
            continue
        if not _is_prime(g.order()):
            continue
        orbit = [g]
        seen.add(g.images)
        qi = 0
        while qi < len(orbit):
            h = orbit[qi]
            qi += 1
            for x in group.generators:
                c = h.conjugate(x)
                if c.images not in seen:
                    seen.add(c.images)
                    orbit.append(c)
        reps.append(g)
    return reps


def _merge_minimal(found: list[GeneratedGroup], new: GeneratedGroup) -> bool:
    """Keep only inclusion-minimal candidates; returns whether the list changed."""
    if any(is_subgroup(f, new) for f in found):
        return False
    survivors = [f for f in found if not is_subgroup(new, f)]
    survivors.append(new)
    found[:] = survivors
    return True


def _sampled_minimal_normals(group: GeneratedGroup) -> list[GeneratedGroup]:
    rng = random.Random(_SAMPLE_SEED)
    found: list[GeneratedGroup] = []
    tried: set[tuple[int, ...]] = set()
    stable = 0
    while stable < _STABILITY_WINDOW:
        s = group.random_element(rng)
        if s.is_identity():
            stable += 1
            continue
        o = s.order()
        changed = False
        for p in _prime_factors(o):
            t = s ** (o // p)
            if t.images in tried:
                continue
            tried.add(t.images)
            closure = group.normal_closure_of([t])
            if _merge_minimal(found, closure):
                changed = True
        stable = 0 if changed else stable + 1
    return found


def minimal_normal_subgroups(group: GeneratedGroup) -> list[GeneratedGroup]:
    """All minimal normal subgroups (exact below EXACT_ORDER_LIMIT, sampled above)."""
    if group.is_trivial():
        raise TrivialInput("the trivial group has no minimal normal subgroups")
    if group.order() > EXACT_ORDER_LIMIT:
        return _sampled_minimal_normals(group)
    found: list[GeneratedGroup] = []
    for rep in _prime_order_class_representatives(group):
        _merge_minimal(found, group.normal_closure_of([rep]))
    return found


def socle(group: GeneratedGroup) -> GeneratedGroup:
    """The subgroup generated by all minimal normal subgroups."""
    gens: list[Perm] = []
    for m in minimal_normal_subgroups(group):
        gens.extend(m.generators)
    return GeneratedGroup(group.degree, reduce_generators(gens, group.degree))


def is_abelian(group: GeneratedGroup) -> bool:
    gens = group.generators
    return all(
        a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :]
    )


def elementary_abelian_prime(group: GeneratedGroup) -> int | None:
    """The prime p when the group is elementary abelian, else None."""
    if group.is_trivial() or not is_abelian(group):
        return None
    primes = _prime_factors(group.order())
    if len(primes) != 1:
        return None
    p = primes[0]
    if all(g.is_identity() or g.order() == p for g in group.generators):
        return p
    return None


def is_simple_nonabelian(group: GeneratedGroup) -> bool:
    if group.is_trivial() or is_abelian(group):
        return False
    if group.order() > EXACT_ORDER_LIMIT:
        raise BudgetExceeded(
            f"simplicity test limited to order {EXACT_ORDER_LIMIT}"
        )
    return all(
        group.normal_closure_of([rep]).order() == group.order()
        for rep in _prime_order_class_representatives(group)
    )


def simple_direct_factors(group: GeneratedGroup) -> list[GeneratedGroup]:
    """Decompose a socle-like group into simple direct factors.

    The returned decomposition is certified: for a nonabelian input every
    factor is checked simple and their orders must multiply to the group
    order, so a sampling miss surfaces as an error here rather than as a
    wrong factorisation.
    """
    if group.is_trivial():
        raise TrivialInput("cannot factor the trivial group")
    p = elementary_abelian_prime(group)
    if p is not None:
        factors = []
        chain = StabilizerChain(group.degree)
        for g in group.generators:
            if not chain.member(g):
                factors.append(GeneratedGroup(group.degree, [g]))
                chain.extend(g)
        return factors
    factors = minimal_normal_subgroups(group)
    product = math.prod(f.order() for f in factors)
    if product != group.order() or not all(
        is_simple_nonabelian(f) for f in factors
    ):
        raise ContractViolation(
            "socle does not split into certified simple factors"
        )
    return factors


# -- size classification ------------------------------------------------


def small_order_bound(degree: int) -> int:
    """Order below which the backtrack search is the method of choice."""
    return degree ** (1 + (degree.bit_length() - 1))


def is_small(group: GeneratedGroup) -> bool:
    return group.order() < small_order_bound(group.degree)


_MATHIEU_ORDERS = {11: 7920, 12: 95040, 23: 10200960, 24: 244823040}


def is_four_transitive(group: GeneratedGroup) -> bool:
    n = group.degree
    if n < 4:
        return False
    chain = build_chain(group.generators, n, base_prefix=(0, 1, 2, 3))
    return [len(chain.vectors[i]) for i in range(4)] == [n, n - 1, n - 2, n - 3]


def mathieu_name(group: GeneratedGroup) -> str | None:
    """The 4-transitive Mathieu group this is, if any."""
    n = group.degree
    if _MATHIEU_ORDERS.get(n) == group.order() and is_four_transitive(group):
        return f"M{n}"
    return None


def large_parameters(degree: int) -> list[tuple[int, int, int]]:
    """All (m, k, l) with C(m, k)^l == degree, m >= 5 and k <= m/2.

    These are the candidate shapes for a point set of the form
    (k-subsets of m)^l; the list is sorted so that more specific shapes
    (smaller m, deeper l) come before the trivial (degree, 1, 1).
    """
    out = []
    l = 1
    while 5**l <= degree:
        root = None
        approx = round(degree ** (1.0 / l))
        for cand in range(max(2, approx - 2), approx + 3):
            if cand**l == degree:
                root = cand
                break
        if root is not None and root >= 5:
            k = 1
            while 2**k <= root:
                m = max(5, 2 * k)
                while math.comb(m, k) < root:
                    m += 1
                if math.comb(m, k) == root and k <= m // 2:
                    out.append((m, k, l))
                k += 1
        l += 1
    return sorted(out)


@dataclass
class Classification:
    """Which of the three computation routes fits the group."""

    kind: str                     # "large" | "mathieu" | "small"
    degree: int
    order: int
    parameters: tuple[int, int, int] | None = None
    mathieu: str | None = None
    within_small_bound: bool = False
    context: object = field(default=None, repr=False)


def _large_order_window(m: int, k: int, l: int) -> tuple[int, int]:
    """Divisor and cap any group with socle A(k, m)^l must satisfy."""
    socle_order = (math.factorial(m) // 2) ** l
    per_factor = math.factorial(m) * (2 if m == 2 * k else 1)
    return socle_order, per_factor**l * math.factorial(l)


def classify(group: GeneratedGroup) -> Classification:
    """Sort a primitive group into the large / Mathieu / small trichotomy.

    The families overlap; a verified large certificate wins because it is
    the one that changes the algorithm, and the 4-transitive Mathieu
    groups are reported as such even when they are also small.
    """
    if not group.is_transitive():
        raise IntransitiveInput(group.orbits())
    blocks = group.nontrivial_block_system()
    if blocks is not None:
        raise ImprimitiveInput(blocks)
    n = group.degree
    order = group.order()
    bound_ok = order < small_order_bound(n)
    for m, k, l in large_parameters(n):
        socle_order, cap = _large_order_window(m, k, l)
        if order % socle_order != 0 or order > cap:
            continue
        from .large import try_verify_large

        context = try_verify_large(group, m, k, l)
        if context is not None:
            return Classification(
                "large", n, order,
                parameters=(m, k, l),
                within_small_bound=bound_ok,
                context=context,
            )
    name = mathieu_name(group)
    if name is not None:
        return Classification(
            "mathieu", n, order, mathieu=name, within_small_bound=bound_ok
        )
    return Classification("small", n, order, within_small_bound=bound_ok)
