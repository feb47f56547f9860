"""Homomorphisms between permutation groups, given by generator images.

A map is stored as the group generated by the combined permutations
(x_i acting on the domain points, its image acting on the codomain points
shifted past them).  That group projects onto the domain, and the map is
well defined exactly when the projection is injective, i.e. when the
combined group has the same order as the domain.  Building its chain with
the domain's base as prefix makes evaluation a base-image lookup.
"""

from __future__ import annotations

from typing import Sequence

from .errors import (
    ContractViolation,
    DegreeMismatch,
    NotAHomomorphism,
    NotInGroup,
)
from .group import GeneratedGroup, build_chain
from .perm import Perm


class GeneratorImageMap:
    """A homomorphism ``domain -> codomain`` defined on the generators."""

    def __init__(
        self,
        domain: GeneratedGroup,
        codomain: GeneratedGroup,
        images: Sequence[Perm],
    ):
        if len(images) != len(domain.generators):
            raise NotAHomomorphism(
                f"{len(domain.generators)} generators but {len(images)} images"
            )
        for y in images:
            if y.degree != codomain.degree:
                raise DegreeMismatch(
                    f"image degree {y.degree} vs codomain degree {codomain.degree}"
                )
            if not codomain.member(y):
                raise NotInGroup("image lies outside the codomain")
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        m, n = domain.degree, codomain.degree
        combined = [
            Perm(x.images + tuple(m + j for j in y.images))
            for x, y in zip(domain.generators, images)
        ]
        self._graph = build_chain(combined, m + n, base_prefix=domain.chain.base)
        if self._graph.order() != domain.order():
            raise NotAHomomorphism(
                "generator images are not compatible with the relations"
            )
        self._image_group: GeneratedGroup | None = None

    def __call__(self, g: Perm) -> Perm:
        m = self.domain.degree
        targets = tuple(g.images[b] for b in self.domain.chain.base)
        combined = self._graph.base_image_element(targets)
        if combined is None or combined.images[:m] != g.images:
            raise NotInGroup("element is not in the domain of the map")
        return Perm(tuple(p - m for p in combined.images[m:]))

    def image_group(self) -> GeneratedGroup:
        if self._image_group is None:
            self._image_group = GeneratedGroup(self.codomain.degree, self.images)
        return self._image_group

    def is_injective(self) -> bool:
        return self.image_group().order() == self.domain.order()

    def is_surjective(self) -> bool:
        return self.image_group().order() == self.codomain.order()

    def then(self, other: "GeneratorImageMap") -> "GeneratorImageMap":
        """The composite map g -> other(self(g))."""
        return GeneratorImageMap(
            self.domain, other.codomain, [other(y) for y in self.images]
        )

    def inverse(self) -> "GeneratorImageMap":
        if not self.is_injective():
            raise NotAHomomorphism("only injective maps can be inverted")
        return GeneratorImageMap(
            self.image_group(), self.domain, self.domain.generators
        )

    def __repr__(self) -> str:
        return (
            f"GeneratorImageMap({self.domain!r} -> {self.codomain!r}, "
            f"{len(self.images)} images)"
        )


def conjugation_map(
    group: GeneratedGroup, f: Perm, codomain: GeneratedGroup | None = None
) -> GeneratorImageMap:
    """The isomorphism x -> f^-1 x f, onto the conjugate group by default."""
    images = [x.conjugate(f) for x in group.generators]
    if codomain is None:
        codomain = GeneratedGroup(group.degree, images)
    return GeneratorImageMap(group, codomain, images)


def perm_iso_from_group_iso(phi: GeneratorImageMap) -> Perm | None:
    """A point bijection realising the isomorphism by conjugation, if any.

    Returns f with ``phi(x) == x.conjugate(f)`` for every domain generator,
    or None when the two actions are not equivalent.  The domain must be
    transitive and the degrees must agree.

    Candidates for the image of the point 0 are the fixed points of
    phi(Stab(0)); each determines the rest of f through a transversal, and
    a full intertwining check certifies whichever candidate survives.
    """
    g_grp = phi.domain
    n = g_grp.degree
    if phi.codomain.degree != n:
        raise DegreeMismatch("point bijection needs equal degrees")
    if not g_grp.is_transitive():
        raise ContractViolation("domain must be transitive")
    if not phi.is_injective():
        return None
    stab = g_grp.point_stabiliser(0)
    stab_images = [phi(s) for s in stab.generators]
    candidates = [
        gamma
        for gamma in range(n)
        if all(y.images[gamma] == gamma for y in stab_images)
    ]
    chain = build_chain(g_grp.generators, n, base_prefix=(0,))
    points = list(chain.vectors[0].keys())
    for gamma in candidates:
        f_images = [0] * n
        for p in points:
            f_images[p] = phi(chain.transversal(0, p)).images[gamma]
        if len(set(f_images)) != n:
            continue
        f = Perm(f_images)
        if all(
            phi(x) == x.conjugate(f) for x in g_grp.generators
        ):
            return f
    return None
