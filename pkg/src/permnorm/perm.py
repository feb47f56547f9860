"""Permutations of {0, ..., n-1} as immutable image tables.

Points are 0-based everywhere inside the library; the 1-based convention of
the text formats lives entirely in groupfile.  Products compose left to
right: (p * q)(x) = q(p(x)), matching the exponent convention x^(pq) =
(x^p)^q used throughout.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatch, PermnormError

_CYCLE_RE = re.compile(r"\(\s*([0-9,\s]*?)\s*\)")


class Perm:
    """A permutation, stored as the tuple of images of 0..n-1."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise PermnormError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _unchecked(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._unchecked(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build from disjoint cycles of 0-based points."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)([cycle[0]])):
                if a in seen:
                    raise PermnormError(f"point {a} repeated across cycles")
                if not 0 <= a < degree:
                    raise PermnormError(f"point {a} out of range for degree {degree}")
                seen.add(a)
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        """Apply self first, then other."""
        oi = other.images
        if len(oi) != len(self.images):
            raise DegreeMismatch(f"degree {len(self.images)} vs {len(oi)}")
        return Perm._unchecked(tuple(oi[i] for i in self.images))

    def inverse(self) -> "Perm":
        images = self.images
        inv = [0] * len(images)
        for i, img in enumerate(images):
            inv[img] = i
        return Perm._unchecked(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: "Perm") -> "Perm":
        """Return self^g = g^-1 * self * g without forming the inverse."""
        gi = g.images
        if len(gi) != len(self.images):
            raise DegreeMismatch(f"degree {len(self.images)} vs {len(gi)}")
        out = [0] * len(gi)
        for i, img in enumerate(self.images):
            out[gi[i]] = gi[img]
        return Perm._unchecked(tuple(out))

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, img in enumerate(self.images) if img != i]

    def min_moved(self) -> int | None:
        for i, img in enumerate(self.images):
            if img != i:
                return i
        return None

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least point, sorted by it."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            p = self.images[start]
            while p != start:
                seen[p] = True
                cycle.append(p)
                p = self.images[p]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, sorted descending."""
        lengths = sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True)
        return tuple(lengths)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Perm({fmt_perm(self)})"


def parse_perm(degree: int, text: str) -> Perm:
    """Parse 0-based disjoint-cycle notation like '(0,1,2)(3,4)' or '()'."""
    text = text.strip()
    if text in ("()", ""):
        return Perm.identity(degree)
    if not re.fullmatch(r"(\s*\([0-9,\s]*\)\s*)+", text):
        raise PermnormError(f"malformed cycle notation: {text!r}")
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).strip()
        if body:
            cycles.append([int(tok) for tok in body.split(",")])
    return Perm.from_cycles(degree, cycles)


def fmt_perm(p: Perm) -> str:
    """Format as 0-based disjoint cycles; identity prints as '()'."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycles)


def compose_all(perms: Sequence[Perm], degree: int) -> Perm:
    """Product of perms applied left to right; identity for the empty list."""
    result = Perm.identity(degree)
    for p in perms:
        result = result * p
    return result


def iter_symmetric(degree: int) -> Iterator[Perm]:
    """All of Sym(degree) in lexicographic image order, iteratively.

    Uses the classic successor step (find the rightmost ascent, swap, reverse
    the tail), so memory stays O(n) no matter the degree.
    """
    images = list(range(degree))
    while True:
        yield Perm._unchecked(tuple(images))
        i = degree - 2
        while i >= 0 and images[i] >= images[i + 1]:
            i -= 1
        if i < 0:
            return
        j = degree - 1
        while images[j] <= images[i]:
            j -= 1
        images[i], images[j] = images[j], images[i]
        images[i + 1 :] = reversed(images[i + 1 :])
