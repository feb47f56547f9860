"""Backtrack search for the normaliser of a group in the symmetric group.

A conjugating permutation sigma is pinned down by two kinds of decisions:
the images y_i = x_i^sigma it assigns to each generator row, and seed
values sigma(mu) for points no resolved row reaches yet.  The relation
sigma(mu^{x_i}) = sigma(mu)^{y_i} then propagates everything else, so the
search tree branches only on rows and seeds, and every normalising
permutation is reached by exactly one path (each decision is a function of
sigma).  Acceptance at a leaf re-checks x^sigma in G for every row
directly, so the answer is certified independently of the path that
produced it.

Three optimisations can be switched off without changing the result:
matching candidate rows by cycle type, rejecting repeated image values
before a leaf, and steering row enumeration down the stabilizer chain with
forced levels instead of scanning the whole group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceeded, ContractViolation, TrivialInput
from .group import (
    GeneratedGroup,
    StabilizerChain,
    _DSU,
    build_chain,
    reduce_generators,
)
from .perm import Perm


@dataclass(frozen=True)
class BacktrackConfig:
    cycle_type_prune: bool = True
    injectivity_prune: bool = True
    chain_descent: bool = True
    node_limit: int | None = None


# Group order up to which constrained row lookups go through a one-off
# (point, image) -> elements index instead of a chain descent.  The index
# costs |G| * degree set entries, so it has to stop somewhere.
_INDEX_LIMIT = 200_000


@dataclass
class BacktrackResult:
    group: GeneratedGroup
    nodes: int
    accepted: int


def small_generating_set(group: GeneratedGroup, rng_seed: int = 1729) -> list[Perm]:
    """A short generating set, found by seeded random search.

    Fewer generators mean fewer rows for the backtrack to fill in, which
    matters far more than the time spent here.
    """
    nontrivial = [g for g in group.generators if not g.is_identity()]
    if not nontrivial:
        return []
    if len(nontrivial) <= 2:
        return nontrivial
    order = group.order()
    rng = random.Random(rng_seed)
    for size in (1, 2, 3):
        for _ in range(12):
            cand = [group.random_element(rng) for _ in range(size)]
            if any(g.is_identity() for g in cand):
                continue
            if build_chain(cand, group.degree).order() == order:
                return cand
    return reduce_generators(nontrivial, group.degree)


def base_size_bound(degree: int) -> int:
    """The guaranteed base-size ceiling for the groups this module targets."""
    return 2 * (degree.bit_length() - 1) + 26


def small_base(group: GeneratedGroup) -> list[int]:
    """A base no longer than base_size_bound(degree).

    Greedy first: append the smallest point the current stabiliser still
    moves, then descend into that stabiliser.  For every group this module
    is meant for the greedy base fits the bound with lots of room; the
    exhaustive search over ever longer point tuples is a safety net.
    """
    n = group.degree
    bound = base_size_bound(n)
    base: list[int] = []
    sub = group
    while sub.order() > 1 and len(base) <= bound:
        mu = min(g.min_moved() for g in sub.generators if not g.is_identity())
        base.append(mu)
        sub = sub.point_stabiliser(mu)
    if sub.order() == 1 and len(base) <= bound:
        return base
    for size in range(1, bound + 1):
        for points in itertools.combinations(range(n), size):
            chain = build_chain(group.generators, n, base_prefix=points)
            fixing = chain.order()
            for level in range(size):
                fixing //= len(chain.vectors[level])
            if fixing == 1:
                return list(points)
    raise ContractViolation(f"no base of size <= {bound} at degree {n}")


def _constrained_elements(
    chain: StabilizerChain,
    pairs: Sequence[tuple[int, int]],
    want_type: tuple[int, ...] | None,
) -> Iterator[Perm]:
    """Elements y of the chain's group with p^y == q for every pair.

    Pairs whose left point is a base point force the target at that level
    of the descent; the rest are checked once a full element is assembled.
    """
    by_point: dict[int, int] = {}
    for p, q in pairs:
        if by_point.setdefault(p, q) != q:
            return
    base = chain.base
    in_base = set(base)
    leftover = [(p, q) for p, q in by_point.items() if p not in in_base]

    def descend(level: int, suffix: Perm, inv: Perm) -> Iterator[Perm]:
        if level == len(base):
            if want_type is not None and suffix.cycle_type() != want_type:
                return
            for p, q in leftover:
                if suffix.images[p] != q:
                    return
            yield suffix
            return
        b = base[level]
        if b in by_point:
            d = inv.images[by_point[b]]
            if d not in chain.vectors[level]:
                return
            choices = [d]
        else:
            choices = list(chain.vectors[level].keys())
        for d in choices:
            nxt = chain.transversal(level, d) * suffix
            yield from descend(level + 1, nxt, nxt.inverse())

    ident = Perm.identity(chain.degree)
    yield from descend(0, ident, ident)


def _scan_elements(
    elements: Sequence[Perm],
    pairs: Sequence[tuple[int, int]],
    want_type: tuple[int, ...] | None,
) -> Iterator[Perm]:
    for y in elements:
        if want_type is not None and y.cycle_type() != want_type:
            continue
        if all(y.images[p] == q for p, q in pairs):
            yield y


def normaliser_backtrack(
    group: GeneratedGroup,
    rows: Sequence[Perm] | None = None,
    config: BacktrackConfig | None = None,
) -> BacktrackResult:
    """All sigma in Sym(n) with x^sigma in G for every row, as a group.

    The rows default to the group's generators; any generating set of the
    group gives the same normaliser.
    """
    cfg = config or BacktrackConfig()
    xs = [x for x in (rows if rows is not None else group.generators)
          if not x.is_identity()]
    if not xs:
        raise TrivialInput("normaliser of the trivial group is everything")
    n = group.degree
    chain = group.chain
    x_imgs = [x.images for x in xs]
    x_types = [x.cycle_type() for x in xs]
    base_set = set(chain.base)
    accepted: list[Perm] = []
    nodes = 0
    element_cache: list[Perm] | None = None
    type_cache: list[tuple[int, ...]] | None = None
    index_cache: dict[tuple[int, int], set[int]] | None = None

    def all_elements() -> list[Perm]:
        nonlocal element_cache
        if element_cache is None:
            element_cache = list(chain.iter_elements())
        return element_cache

    def pair_index() -> dict[tuple[int, int], set[int]]:
        nonlocal index_cache, type_cache
        if index_cache is None:
            index_cache = {}
            type_cache = []
            for idx, e in enumerate(all_elements()):
                type_cache.append(e.cycle_type())
                for p, q in enumerate(e.images):
                    index_cache.setdefault((p, q), set()).add(idx)
        return index_cache

    def indexed_candidates(pairs, want_type) -> Iterator[Perm]:
        buckets = pair_index()
        sets = []
        for pq in set(pairs):
            bucket = buckets.get(pq)
            if bucket is None:
                return
            sets.append(bucket)
        sets.sort(key=len)
        hits = sets[0].intersection(*sets[1:]) if len(sets) > 1 else sets[0]
        elems = all_elements()
        types = type_cache
        for idx in sorted(hits):
            if want_type is None or types[idx] == want_type:
                yield elems[idx]

    def candidates(pairs, row) -> Iterator[Perm]:
        want = x_types[row] if cfg.cycle_type_prune else None
        if not cfg.chain_descent:
            return _scan_elements(all_elements(), pairs, want)
        if pairs and chain.order() <= _INDEX_LIMIT:
            return indexed_candidates(pairs, want)
        return _constrained_elements(chain, pairs, want)

    def close(sigma, used, ys, fresh_points, fresh_row) -> bool:
        """Propagate to a fixpoint; False when sigma stops being a function."""
        queue = list(fresh_points)

        def apply(mu, i):
            nu = x_imgs[i][mu]
            val = ys[i].images[sigma[mu]]
            if nu in sigma:
                return sigma[nu] == val
            if cfg.injectivity_prune and val in used:
                return False
            sigma[nu] = val
            used.add(val)
            queue.append(nu)
            return True

        if fresh_row is not None:
            for mu in list(sigma.keys()):
                if not apply(mu, fresh_row):
                    return False
        while queue:
            mu = queue.pop()
            for i in range(len(xs)):
                if ys[i] is not None and not apply(mu, i):
                    return False
        return True

    def root_row() -> tuple[int, Iterator[Perm]]:
        if not cfg.cycle_type_prune:
            return 0, iter(all_elements())
        counts = {t: 0 for t in x_types}
        for e in chain.iter_elements():
            t = e.cycle_type()
            if t in counts:
                counts[t] += 1
        row = min(range(len(xs)), key=lambda i: (counts[x_types[i]], i))
        want = x_types[row]
        gen = (e for e in chain.iter_elements() if e.cycle_type() == want)
        return row, gen

    def branch_row(sigma, used, ys, row, cands):
        for y in cands:
            ys2 = list(ys)
            ys2[row] = y
            sig2 = dict(sigma)
            used2 = set(used)
            if close(sig2, used2, ys2, (), row):
                dfs(sig2, used2, ys2)

    def dfs(sigma, used, ys):
        nonlocal nodes
        nodes += 1
        if cfg.node_limit is not None and nodes > cfg.node_limit:
            raise BudgetExceeded(f"backtrack exceeded {cfg.node_limit} nodes")
        if len(sigma) == n:
            images = tuple(sigma[p] for p in range(n))
            if len(set(images)) != n:
                return
            cand = Perm(images)
            if all(chain.member(x.conjugate(cand)) for x in xs):
                accepted.append(cand)
            return
        best = None
        for i in range(len(xs)):
            if ys[i] is not None:
                continue
            pairs = [
                (sigma[mu], sigma[x_imgs[i][mu]])
                for mu in sigma
                if x_imgs[i][mu] in sigma
            ]
            if not pairs:
                continue
            score = (sum(1 for p, _ in pairs if p in base_set), len(pairs))
            if best is None or score > best[0]:
                best = (score, i, pairs)
        if best is not None:
            _, row, pairs = best
            branch_row(sigma, used, ys, row, candidates(pairs, row))
        elif all(y is None for y in ys):
            row, cands = root_row()
            branch_row(sigma, used, ys, row, cands)
        else:
            # Seed the point with the largest orbit under the resolved
            # rows: its whole orbit joins the domain in one propagation,
            # where a poorly chosen point (say, fixed by every resolved
            # row) would force a cascade of n-way seed branches.
            dsu = _DSU(n)
            for i in range(len(xs)):
                if ys[i] is not None:
                    for p in range(n):
                        dsu.union(p, x_imgs[i][p])
            sizes: dict[int, int] = {}
            for p in range(n):
                r = dsu.find(p)
                sizes[r] = sizes.get(r, 0) + 1
            mu = max(
                (p for p in range(n) if p not in sigma),
                key=lambda p: (sizes[dsu.find(p)], -p),
            )
            for nu in range(n):
                if cfg.injectivity_prune and nu in used:
                    continue
                sig2 = dict(sigma)
                used2 = set(used)
                sig2[mu] = nu
                used2.add(nu)
                if close(sig2, used2, ys, [mu], None):
                    dfs(sig2, used2, list(ys))

    dfs({}, set(), [None] * len(xs))
    result = GeneratedGroup(n, reduce_generators(accepted, n))
    if result.order() != len(accepted):
        raise ContractViolation(
            "normaliser order disagrees with the accepted leaf count"
        )
    return BacktrackResult(result, nodes, len(accepted))


def normaliser_small(
    group: GeneratedGroup, config: BacktrackConfig | None = None
) -> BacktrackResult:
    """Normaliser in Sym(n) via backtrack, after shrinking the row set."""
    rows = small_generating_set(group)
    if not rows:
        raise TrivialInput("normaliser of the trivial group is everything")
    return normaliser_backtrack(group, rows=rows, config=config)
