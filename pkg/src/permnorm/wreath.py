"""Symmetric and alternating groups on k-subsets, and their wreath products.

Two indexing conventions are fixed here and treated as part of the output
format, so that certificates mean the same thing across runs:

* k-subsets of {0..m-1} are numbered colexicographically: the subset with
  ascending elements e_1 < ... < e_k gets rank sum(C(e_i, i)).
* points of a product action on tuples over a domain of size N are numbered
  big-endian: the tuple (t_0, ..., t_{l-1}) is the digit string of the point
  in base N with t_0 most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator

from .errors import BudgetExceeded
from .group import GeneratedGroup
from .perm import Perm

# Product actions blow up as C(m,k)^l; refuse degrees where even writing a
# single image table is unreasonable.
MAX_DEGREE = 200_000


def subset_rank(subset: tuple[int, ...]) -> int:
    """Colex rank of a k-subset given by its sorted tuple of elements."""
    return sum(comb(e, i) for i, e in enumerate(subset, start=1))


def subset_unrank(rank: int, k: int) -> tuple[int, ...]:
    """Inverse of subset_rank; returns the sorted element tuple."""
    out = []
    r = rank
    for i in range(k, 0, -1):
        # Largest e with C(e, i) <= r; elements come out descending.
        e = i - 1
        while comb(e + 1, i) <= r:
            e += 1
        out.append(e)
        r -= comb(e, i)
    out.reverse()
    return tuple(out)


def iter_subsets(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of {0..m-1} in colex order (rank order)."""
    for r in range(comb(m, k)):
        yield subset_unrank(r, k)


def perm_on_subsets(g: Perm, k: int) -> Perm:
    """The permutation induced by g on the C(m, k) many k-subsets."""
    m = g.degree
    images = [0] * comb(m, k)
    for r in range(comb(m, k)):
        moved = sorted(g.images[e] for e in subset_unrank(r, k))
        images[r] = subset_rank(tuple(moved))
    return Perm(images)


def _point_generators(m: int, parity: str) -> list[Perm]:
    if parity == "symmetric":
        cycle = Perm.from_cycles(m, [tuple(range(m))])
        swap = Perm.from_cycles(m, [(0, 1)])
        return [cycle, swap]
    if parity != "alternating":
        raise ValueError(f"parity must be symmetric or alternating: {parity!r}")
    if m < 3:
        raise ValueError("alternating groups need m >= 3")
    # An r-cycle is even iff r is odd, so drop point 0 from the long cycle
    # when m is even.
    cycle = Perm.from_cycles(m, [tuple(range(m))] if m % 2 == 1
                             else [tuple(range(1, m))])
    three = Perm.from_cycles(m, [(0, 1, 2)])
    return [cycle, three]


def subsets_action(m: int, k: int, parity: str = "symmetric") -> GeneratedGroup:
    """S_m or A_m acting on the k-subsets of {0..m-1}, colex-numbered.

    Two generators: the images of a long cycle and of a transposition
    (3-cycle for the alternating case).
    """
    if not (m >= 2 and 1 <= k <= m // 2):
        raise ValueError(f"need m >= 2 and 1 <= k <= m/2, got m={m} k={k}")
    gens = [perm_on_subsets(g, k) for g in _point_generators(m, parity)]
    return GeneratedGroup(comb(m, k), gens)


@dataclass(frozen=True)
class WreathSpec:
    """Shape of a wreath product action: which one, and how points are laid out.

    For the product action the degree is C(m,k)^l and points correspond to
    l-tuples of subset ranks (big-endian).  For the imprimitive action the
    degree is m*l and coordinate j owns the block {j*m, ..., j*m + m - 1};
    k is carried along but does not enter the action.
    """

    m: int
    k: int
    l: int
    action: str  # "product" | "imprimitive"

    @property
    def points_per_coordinate(self) -> int:
        return comb(self.m, self.k) if self.action == "product" else self.m

    @property
    def degree(self) -> int:
        if self.action == "product":
            return comb(self.m, self.k) ** self.l
        return self.m * self.l

    def tuple_to_point(self, t: tuple[int, ...]) -> int:
        n = self.points_per_coordinate
        point = 0
        for digit in t:
            point = point * n + digit
        return point

    def point_to_tuple(self, point: int) -> tuple[int, ...]:
        n = self.points_per_coordinate
        digits = []
        for _ in range(self.l):
            point, d = divmod(point, n)
            digits.append(d)
        digits.reverse()
        return tuple(digits)


def coordinate_perm(spec: WreathSpec, coordinate: int, g: Perm) -> Perm:
    """Lift a permutation of one coordinate's domain to the whole action."""
    n = spec.points_per_coordinate
    if g.degree != n:
        raise ValueError(f"expected degree {n}, got {g.degree}")
    if spec.action == "imprimitive":
        images = list(range(spec.degree))
        base = coordinate * spec.m
        for i in range(spec.m):
            images[base + i] = base + g.images[i]
        return Perm(images)
    # Product action: rewrite one digit of the base-n expansion in place.
    shift = n ** (spec.l - 1 - coordinate)
    images = [0] * spec.degree
    for p in range(spec.degree):
        d = (p // shift) % n
        images[p] = p + (g.images[d] - d) * shift
    return Perm(images)


def top_perm(spec: WreathSpec, s: Perm) -> Perm:
    """Lift a permutation of the l coordinates to the whole action.

    Coordinate j's content moves to coordinate s(j).
    """
    if s.degree != spec.l:
        raise ValueError(f"expected degree {spec.l}, got {s.degree}")
    if spec.action == "imprimitive":
        images = [0] * spec.degree
        for j in range(spec.l):
            dst = s.images[j] * spec.m
            for i in range(spec.m):
                images[j * spec.m + i] = dst + i
        return Perm(images)
    n = spec.points_per_coordinate
    images = [0] * spec.degree
    for p in range(spec.degree):
        t = spec.point_to_tuple(p)
        u = [0] * spec.l
        for j in range(spec.l):
            u[s.images[j]] = t[j]
        images[p] = spec.tuple_to_point(tuple(u))
    return Perm(images)


def wreath(m: int, k: int, l: int, action: str = "product"
           ) -> tuple[GeneratedGroup, WreathSpec]:
    """The wreath product of S_m (on k-subsets for the product action) with S_l.

    Generators: two for the first-coordinate copy of the base group, and for
    l >= 2 two more for the coordinate permutations (an l-cycle and a
    transposition).
    """
    if action not in ("product", "imprimitive"):
        raise ValueError(f"unknown action {action!r}")
    if not (m >= 2 and 1 <= k <= m // 2 and l >= 1):
        raise ValueError(f"bad parameters m={m} k={k} l={l}")
    spec = WreathSpec(m, k, l, action)
    if spec.degree > MAX_DEGREE:
        raise BudgetExceeded(f"degree {spec.degree} exceeds {MAX_DEGREE}")
    if action == "product":
        base = [perm_on_subsets(g, k) for g in _point_generators(m, "symmetric")]
    else:
        base = _point_generators(m, "symmetric")
    gens = [coordinate_perm(spec, 0, g) for g in base]
    if l >= 2:
        gens.append(top_perm(spec, Perm.from_cycles(l, [tuple(range(l))])))
        gens.append(top_perm(spec, Perm.from_cycles(l, [(0, 1)])))
    return GeneratedGroup(spec.degree, gens), spec


def wreath_order(m: int, l: int) -> int:
    """Order of the full wreath product with symmetric base."""
    return factorial(m) ** l * factorial(l)


def product_socle(m: int, k: int, l: int) -> tuple[GeneratedGroup, WreathSpec]:
    """A_m^l acting coordinate-wise on l-tuples of k-subsets."""
    spec = WreathSpec(m, k, l, "product")
    if spec.degree > MAX_DEGREE:
        raise BudgetExceeded(f"degree {spec.degree} exceeds {MAX_DEGREE}")
    base = [perm_on_subsets(g, k) for g in _point_generators(m, "alternating")]
    gens = [coordinate_perm(spec, j, g) for j in range(l) for g in base]
    return GeneratedGroup(spec.degree, gens), spec
