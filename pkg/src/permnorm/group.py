"""Generated permutation groups and stabilizer chains.

The chain implementation is the deterministic Schreier-Sims: strong
generators are verified level by level, Schreier generators are sifted with
early termination, and every residue that fails to sift is adjoined at the
levels it belongs to before verification resumes from the deepest change.
New base points are always the smallest point moved by the offending
element, so a chain is a pure function of the generator list (and an
optional prescribed base prefix).

Transversals are stored as Schreier vectors (backpointers into the level's
generator list) and materialised into permutations on demand, with a cache
per level.
"""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    ContractViolation,
    DegreeMismatch,
    NotInOrbit,
    PermnormError,
)
from .perm import Perm

log = logging.getLogger(__name__)


class StabilizerChain:
    """Base, strong generators, and per-level Schreier vectors for a group.

    Level data is nested: ``sgens[i]`` holds every strong generator fixing
    the first i base points, so ``sgens[0]`` generates the whole group and
    ``sgens[i]`` generates the i-th stabilizer subgroup.
    """

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.sgens: list[list[Perm]] = []
        self.vectors: list[dict[int, int]] = []
        self._tcache: list[dict[int, Perm]] = []
        self._icache: list[dict[int, Perm]] = []
        self._order: int | None = None
        for point in base_prefix:
            if not 0 <= point < degree:
                raise PermnormError(f"base point {point} out of range")
            self._append_level(point)

    # -- construction ---------------------------------------------------

    def _append_level(self, point: int) -> None:
        self.base.append(point)
        self.sgens.append([])
        self.vectors.append({point: -1})
        self._tcache.append({point: Perm.identity(self.degree)})
        self._icache.append({point: Perm.identity(self.degree)})

    def _recompute_orbit(self, level: int) -> None:
        gens = self.sgens[level]
        vector = {self.base[level]: -1}
        queue = [self.base[level]]
        while queue:
            p = queue.pop(0)
            for idx, g in enumerate(gens):
                q = g.images[p]
                if q not in vector:
                    vector[q] = idx
                    queue.append(q)
        self.vectors[level] = vector
        self._tcache[level] = {self.base[level]: Perm.identity(self.degree)}
        self._icache[level] = {self.base[level]: Perm.identity(self.degree)}
        self._order = None

    def transversal(self, level: int, point: int) -> Perm:
        """The cached element u with base[level]^u = point."""
        cache = self._tcache[level]
        if point in cache:
            return cache[point]
        vector = self.vectors[level]
        if point not in vector:
            raise NotInOrbit(f"point {point} not in orbit at level {level}")
        path = []
        p = point
        while p not in cache:
            g = self.sgens[level][vector[p]]
            path.append((p, g))
            p = g.inverse().images[p]
        u = cache[p]
        for q, g in reversed(path):
            u = u * g
            cache[q] = u
        return cache[point]

    def transversal_inverse(self, level: int, point: int) -> Perm:
        cache = self._icache[level]
        if point not in cache:
            cache[point] = self.transversal(level, point).inverse()
        return cache[point]

    def extend(self, g: Perm) -> None:
        """Adjoin one more generator and re-verify the chain."""
        if g.degree != self.degree:
            raise DegreeMismatch(f"degree {g.degree} vs chain degree {self.degree}")
        if g.is_identity():
            return
        if all(g.images[b] == b for b in self.base):
            self._append_level(g.min_moved())
        hi = 0
        while hi < len(self.base) and all(
            g.images[b] == b for b in self.base[:hi]
        ):
            hi += 1
        self._adjoin(g, 0, hi - 1)
        self._complete()

    def _adjoin(self, g: Perm, lo: int, hi: int) -> None:
        for level in range(lo, hi + 1):
            self.sgens[level].append(g)
            self._recompute_orbit(level)

    def _strip(self, g: Perm, start: int) -> tuple[Perm, int]:
        """Peel transversal factors; returns (residue, level where it stuck).

        The stick level is len(base) when the residue fixes every base
        point, which for a non-identity residue means the base must grow.
        """
        h = g
        for level in range(start, len(self.base)):
            d = h.images[self.base[level]]
            if d not in self.vectors[level]:
                return h, level
            h = h * self.transversal_inverse(level, d)
        return h, len(self.base)

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restart = self._verify_level(i)
            if restart is None:
                i -= 1
            else:
                i = restart

    def _verify_level(self, i: int) -> int | None:
        """Check every Schreier generator of level i sifts through below.

        Returns None when the level verifies, else the level to resume
        verification from after adjoining a failed residue.
        """
        gens = list(self.sgens[i])
        for p in list(self.vectors[i].keys()):
            u_p = self.transversal(i, p)
            for s in gens:
                q = s.images[p]
                schreier = u_p * s * self.transversal_inverse(i, q)
                if schreier.is_identity():
                    continue
                residue, stuck = self._strip(schreier, i + 1)
                if residue.is_identity():
                    continue
                if stuck == len(self.base):
                    self._append_level(residue.min_moved())
                self._adjoin(residue, i + 1, stuck)
                return stuck
        return None

    # -- queries --------------------------------------------------------

    def order(self) -> int:
        if self._order is None:
            n = 1
            for vector in self.vectors:
                n *= len(vector)
            self._order = n
        return self._order

    def member(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._strip(g, 0)
        return residue.is_identity()

    def sift(self, g: Perm) -> tuple[Perm, int]:
        return self._strip(g, 0)

    def base_image_element(self, targets: Sequence[int]) -> Perm | None:
        """The unique element mapping the base to targets, or None.

        Uniqueness holds because the pointwise stabilizer of a full base is
        trivial; absence means no group element achieves the images.
        """
        if len(targets) != len(self.base):
            raise PermnormError(
                f"expected {len(self.base)} targets, got {len(targets)}"
            )
        suffix = Perm.identity(self.degree)
        inv = suffix
        for level, t in enumerate(targets):
            d = inv.images[t]
            if d not in self.vectors[level]:
                return None
            v = self.transversal(level, d)
            suffix = v * suffix
            inv = suffix.inverse()
        return suffix

    def iter_elements(self) -> Iterator[Perm]:
        """Every group element exactly once, deterministically."""
        return self._iter_from(0)

    def _iter_from(self, level: int) -> Iterator[Perm]:
        if level == len(self.base):
            yield Perm.identity(self.degree)
            return
        points = list(self.vectors[level].keys())
        for deep in self._iter_from(level + 1):
            for p in points:
                yield deep * self.transversal(level, p)

    def random_element(self, rng) -> Perm:
        g = Perm.identity(self.degree)
        for level in range(len(self.base) - 1, -1, -1):
            points = list(self.vectors[level].keys())
            g = g * self.transversal(level, rng.choice(points))
        return g


def build_chain(
    generators: Iterable[Perm], degree: int, base_prefix: Sequence[int] = ()
) -> StabilizerChain:
    chain = StabilizerChain(degree, base_prefix)
    for g in generators:
        chain.extend(g)
    return chain


def reduce_generators(generators: Sequence[Perm], degree: int) -> list[Perm]:
    """Drop generators already in the span of the earlier ones.

    Sifting each candidate against an incrementally grown chain keeps only
    non-members, so every survivor enlarges the group.  Should that still
    leave more than `degree` generators (each survivor at least doubles the
    order, so this needs a long subgroup chain), a greedy redundancy pass
    trims the list without changing the group.
    """
    kept: list[Perm] = []
    chain = StabilizerChain(degree)
    for g in generators:
        if not chain.member(g):
            kept.append(g)
            chain.extend(g)
    if len(kept) > degree:
        target = chain.order()
        i = 0
        while i < len(kept) and len(kept) > degree:
            rest = kept[:i] + kept[i + 1 :]
            if build_chain(rest, degree).order() == target:
                kept = rest
            else:
                i += 1
    return kept


# -- orbits and blocks --------------------------------------------------


def orbit_of(generators: Sequence[Perm], seed: int) -> list[int]:
    seen = {seed}
    queue = [seed]
    out = [seed]
    while queue:
        p = queue.pop(0)
        for g in generators:
            q = g.images[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
                out.append(q)
    return out


def orbit_partition(generators: Sequence[Perm], degree: int) -> list[list[int]]:
    """Orbits as sorted lists, ordered by their least point."""
    seen = [False] * degree
    out = []
    for p in range(degree):
        if not seen[p]:
            orb = orbit_of(generators, p)
            for q in orb:
                seen[q] = True
            out.append(sorted(orb))
    return out


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int | None:
        """Merge classes; returns the representative that lost, or None."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return rb


def minimal_block_system(
    generators: Sequence[Perm], degree: int, pair: tuple[int, int]
) -> list[list[int]]:
    """Finest block system fusing the given pair (Atkinson's algorithm)."""
    dsu = _DSU(degree)
    queue = []
    lost = dsu.union(pair[0], pair[1])
    if lost is not None:
        queue.append(lost)
    while queue:
        q = queue.pop()
        r = dsu.find(q)
        for g in generators:
            lost = dsu.union(g.images[q], g.images[r])
            if lost is not None:
                queue.append(lost)
    blocks: dict[int, list[int]] = {}
    for p in range(degree):
        blocks.setdefault(dsu.find(p), []).append(p)
    return sorted(blocks.values())


def normal_closure(
    group_generators: Sequence[Perm], seed_generators: Sequence[Perm], degree: int
) -> "GeneratedGroup":
    """The smallest subgroup containing the seeds that the group normalises."""
    closure: list[Perm] = []
    chain = StabilizerChain(degree)
    queue: list[Perm] = []
    for s in seed_generators:
        if not chain.member(s):
            closure.append(s)
            chain.extend(s)
            queue.append(s)
    while queue:
        h = queue.pop(0)
        for g in group_generators:
            c = h.conjugate(g)
            if not chain.member(c):
                closure.append(c)
                chain.extend(c)
                queue.append(c)
    result = GeneratedGroup(degree, closure)
    result._chain = chain
    return result


# -- the group wrapper --------------------------------------------------


class GeneratedGroup:
    """A subgroup of Sym(degree) given by generators, with lazy caches.

    Instances are immutable once built; all derived data (chain, orbits,
    primitivity) is computed on first use and kept.
    """

    def __init__(self, degree: int, generators: Iterable[Perm]):
        generators = tuple(generators)
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator degree {g.degree} != group degree {degree}"
                )
        self.degree = degree
        self.generators = generators
        self._chain: StabilizerChain | None = None
        self._orbits: list[list[int]] | None = None
        self._primitive: bool | None = None

    @classmethod
    def symmetric(cls, degree: int) -> "GeneratedGroup":
        if degree <= 1:
            return cls(degree, ())
        gens = [Perm.from_cycles(degree, [tuple(range(degree))])]
        if degree > 2:
            gens.append(Perm.from_cycles(degree, [(0, 1)]))
        return cls(degree, gens)

    @classmethod
    def alternating(cls, degree: int) -> "GeneratedGroup":
        if degree <= 2:
            return cls(degree, ())
        if degree == 3:
            return cls(3, [Perm.from_cycles(3, [(0, 1, 2)])])
        long = (
            tuple(range(degree))
            if degree % 2
            else tuple(range(1, degree))
        )
        return cls(degree, [Perm.from_cycles(degree, [(0, 1, 2)]),
                            Perm.from_cycles(degree, [long])])

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = build_chain(self.generators, self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def member(self, g: Perm) -> bool:
        return self.chain.member(g)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def orbits(self) -> list[list[int]]:
        if self._orbits is None:
            self._orbits = orbit_partition(self.generators, self.degree)
        return self._orbits

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_primitive(self) -> bool:
        """Transitive with no nontrivial block system."""
        if self._primitive is None:
            if not self.is_transitive():
                self._primitive = False
            elif self.degree == 1:
                self._primitive = True
            else:
                self._primitive = all(
                    len(minimal_block_system(self.generators, self.degree, (0, b)))
                    == 1
                    for b in range(1, self.degree)
                )
        return self._primitive

    def nontrivial_block_system(self) -> list[list[int]] | None:
        """A witness block system for an imprimitive transitive group."""
        for b in range(1, self.degree):
            blocks = minimal_block_system(self.generators, self.degree, (0, b))
            if 1 < len(blocks) < self.degree:
                return blocks
        return None

    def point_stabiliser(self, point: int) -> "GeneratedGroup":
        chain = build_chain(self.generators, self.degree, base_prefix=(point,))
        gens = chain.sgens[1] if len(chain.base) > 1 else []
        stab = GeneratedGroup(self.degree, reduce_generators(gens, self.degree))
        expected = self.order() // len(chain.vectors[0])
        if stab.order() != expected:
            raise ContractViolation("stabiliser order mismatch")
        return stab

    def normal_closure_of(self, seeds: Sequence[Perm]) -> "GeneratedGroup":
        return normal_closure(self.generators, seeds, self.degree)

    def elements(self, limit: int | None = None) -> list[Perm]:
        if limit is not None and self.order() > limit:
            raise BudgetExceeded(
                f"group order {self.order()} exceeds enumeration limit {limit}"
            )
        return list(self.chain.iter_elements())

    def random_element(self, rng) -> Perm:
        return self.chain.random_element(rng)

    def __repr__(self) -> str:
        return f"GeneratedGroup(degree={self.degree}, gens={len(self.generators)})"


def equal_groups(a: GeneratedGroup, b: GeneratedGroup) -> bool:
    """Same subgroup of the same symmetric group."""
    if a.degree != b.degree or a.order() != b.order():
        return False
    return all(b.member(g) for g in a.generators)


def is_subgroup(a: GeneratedGroup, b: GeneratedGroup) -> bool:
    return a.degree == b.degree and all(b.member(g) for g in a.generators)
