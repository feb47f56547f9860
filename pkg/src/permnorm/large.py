"""Normalisers of groups that act like alternating groups on tuples of subsets.

The route: certify that the socle of the input is A_m^l acting on l-tuples
of k-subsets (up to relabelling the n points), transport the explicit
normaliser of the standard copy back through the relabelling, and cut the
result down to the normaliser of the input itself by filtering cosets.
The certificate is a point bijection, so every later step can be checked
by conjugation; nothing rests on the classification arithmetic alone.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import product

from .backtrack import BacktrackConfig, normaliser_small, small_generating_set
from .errors import (
    BudgetExceeded,
    ContractViolation,
    NotAHomomorphism,
    NotInGroup,
)
from .group import GeneratedGroup, StabilizerChain, reduce_generators
from .homs import GeneratorImageMap, perm_iso_from_group_iso
from .oracle import verify_normalises
from .perm import Perm, parse_perm
from .structure import (
    Classification,
    classify,
    is_simple_nonabelian,
    large_parameters,
    minimal_normal_subgroups,
    simple_direct_factors,
)
from .wreath import (
    WreathSpec,
    coordinate_perm,
    perm_on_subsets,
    product_socle,
    subset_rank,
    subset_unrank,
    subsets_action,
    top_perm,
    wreath,
)

# The generator-image search enumerates the standard copy, so cap its order.
ISO_ORDER_LIMIT = 100_000

# Ceiling on stored coset representatives; the index [M : G] is what grows.
DEFAULT_COSET_BUDGET = 10**6

# Images of the standard generators of A_6 (the 5-cycle on {1..5} and the
# 3-cycle (0,1,2)) under an automorphism that no relabelling of the six
# points induces; found by exhaustive generator-image search, verified in
# the tests.  Its square is conjugation by (1,4,2,5,3).
_A6_EXOTIC_IMAGES = ("(1,2,3,4,5)", "(0,2,4)(1,3,5)")


@dataclass
class PAContext:
    """Certificate that a group's socle is standard up to a point bijection.

    ``point_map`` conjugates the socle onto ``standard``; transported
    elements can therefore be verified by conjugation and membership.
    """

    group: GeneratedGroup
    socle: GeneratedGroup
    m: int
    k: int
    l: int
    spec: WreathSpec
    standard: GeneratedGroup
    iota: GeneratorImageMap
    point_map: Perm


@dataclass
class NormaliserRun:
    """A normaliser together with how it was obtained."""

    group: GeneratedGroup
    branch: str                  # "large-PA" | "large-AS" | "mathieu" | "small"
    nodes: int = 0               # search tree size when the backtrack ran
    cosets: int = 0              # cosets filtered when the transport ran


# -- isomorphisms onto the standard copies --------------------------------


def _conjugacy_class_representatives(group: GeneratedGroup) -> list[Perm]:
    elems = group.elements(ISO_ORDER_LIMIT)
    pos = {e.images: i for i, e in enumerate(elems)}
    parent = list(range(len(elems)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, e in enumerate(elems):
        for g in group.generators:
            j = find(pos[e.conjugate(g).images])
            ri = find(i)
            if ri != j:
                parent[ri] = j
    reps: dict[int, Perm] = {}
    for i, e in enumerate(elems):
        reps.setdefault(find(i), e)
    return list(reps.values())


def _word_orders(a: Perm, b: Perm) -> tuple[int, ...]:
    ab = a * b
    return (a.order(), b.order(), ab.order(), (a * ab).order(),
            (ab * b).order(), (ab * ab * b).order())


def iso_socle_to_standard(factor: GeneratedGroup, m: int, k: int
                          ) -> GeneratorImageMap:
    """An isomorphism from an abstract copy of A_m onto its k-subsets action.

    Found by mapping a 2-element generating set to candidate images of the
    same conjugacy shape; the homomorphism machinery rejects wrong guesses,
    so a returned map is certified multiplicative and bijective.
    """
    standard = subsets_action(m, k, "alternating")
    target = math.factorial(m) // 2
    if factor.order() != target:
        raise ValueError(
            f"factor order {factor.order()} is not that of the "
            f"alternating group on {m} points ({target})"
        )
    if target > ISO_ORDER_LIMIT:
        raise BudgetExceeded(
            f"generator-image search needs order <= {ISO_ORDER_LIMIT}"
        )
    pair = small_generating_set(factor)
    if len(pair) != 2:
        raise ValueError("expected a 2-generated nonabelian factor")
    dom = GeneratedGroup(factor.degree, pair)
    a, b = pair
    fingerprint = _word_orders(a, b)
    elems = standard.elements(ISO_ORDER_LIMIT)
    orders = [e.order() for e in elems]
    # The image of the first generator only matters up to conjugacy in the
    # codomain, so class representatives suffice for it.
    for h1 in _conjugacy_class_representatives(standard):
        if h1.order() != fingerprint[0]:
            continue
        for h2, o2 in zip(elems, orders):
            if o2 != fingerprint[1] or _word_orders(h1, h2) != fingerprint:
                continue
            try:
                phi = GeneratorImageMap(dom, standard, [h1, h2])
            except NotAHomomorphism:
                continue
            if phi.is_surjective():
                return phi
    raise ValueError(f"no isomorphism onto the {k}-subsets copy of A_{m}")


def outer_aut_a6(k: int) -> GeneratorImageMap:
    """The exceptional automorphism of A_6 in its k-subsets representation."""
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    standard = subsets_action(6, k, "alternating")
    images = [perm_on_subsets(parse_perm(6, text), k)
              for text in _A6_EXOTIC_IMAGES]
    return GeneratorImageMap(standard, standard, images)


# -- the certificate ------------------------------------------------------


def try_verify_large(group: GeneratedGroup, m: int, k: int, l: int
                     ) -> PAContext | None:
    """Certify the socle as A_m^l on l-tuples of k-subsets, or report None.

    The positive answer carries a point bijection onto the standard copy;
    None means the certificate could not be built with these parameters,
    which is the definitive negative at this desk scale.
    """
    n = group.degree
    if math.comb(m, k) ** l != n:
        return None
    factor_order = math.factorial(m) // 2
    normals = minimal_normal_subgroups(group)
    if len(normals) != 1:
        return None
    soc = normals[0]
    if soc.order() != factor_order**l:
        return None
    try:
        factors = simple_direct_factors(soc)
    except ContractViolation:
        return None
    if len(factors) != l or any(f.order() != factor_order for f in factors):
        return None
    try:
        maps = [iso_socle_to_standard(f, m, k) for f in factors]
    except ValueError:
        return None
    standard, spec = product_socle(m, k, l)
    dom_gens = [g for phi in maps for g in phi.domain.generators]
    lifted = [
        coordinate_perm(spec, i, y)
        for i, phi in enumerate(maps)
        for y in phi.images
    ]
    socle_group = GeneratedGroup(n, dom_gens)
    if socle_group.order() != soc.order():
        raise ContractViolation("socle regenerated with the wrong order")
    iota = GeneratorImageMap(socle_group, standard, lifted)
    for phi in _twists(iota, standard, spec, m, k, l):
        point_map = perm_iso_from_group_iso(phi)
        if point_map is not None:
            return PAContext(group, socle_group, m, k, l, spec, standard,
                             phi, point_map)
    return None


def _twists(iota, standard, spec, m, k, l):
    """The isomorphism candidates derived from iota.

    Only m = 6 has automorphisms of the factor that no relabelling of the
    subsets induces, so only there can the plain iota fail to be realisable
    while a twisted version succeeds; the 2^l combinations are exhausted.
    """
    yield iota
    if m != 6:
        return
    plain = [perm_on_subsets(parse_perm(6, t), k) for t in
             ("(1,2,3,4,5)", "(0,1,2)")]
    exotic = [perm_on_subsets(parse_perm(6, t), k) for t in _A6_EXOTIC_IMAGES]
    for mask in product((False, True), repeat=l):
        if not any(mask):
            continue
        images = [
            coordinate_perm(spec, j, (exotic if mask[j] else plain)[i])
            for j in range(l)
            for i in range(2)
        ]
        theta = GeneratorImageMap(standard, standard, images)
        yield iota.then(theta)


# -- normaliser of the socle ----------------------------------------------


def _complement_perm(m: int, k: int) -> Perm:
    """Subset -> complement on the C(m, k) points; only total for m = 2k."""
    count = math.comb(m, k)
    images = [0] * count
    for r in range(count):
        rest = sorted(set(range(m)) - set(subset_unrank(r, k)))
        images[r] = subset_rank(tuple(rest))
    return Perm(images)


def delta_normaliser_generators(m: int, k: int) -> list[Perm]:
    """Generators of the full normaliser of A_m's k-subsets copy in Sym.

    The images of S_m almost always suffice.  For m = 2k complementation
    centralises the action, and for m = 6 the exceptional automorphism may
    itself be induced by a bijection of the subsets (it is for k = 3);
    both give normalising elements beyond the S_m images.
    """
    gens = list(subsets_action(m, k, "symmetric").generators)
    if m == 2 * k:
        gens.append(_complement_perm(m, k))
    if m == 6:
        realiser = perm_iso_from_group_iso(outer_aut_a6(k))
        if realiser is not None:
            gens.append(realiser)
    return gens


def normaliser_of_socle_pa(group: GeneratedGroup, ctx: PAContext
                           ) -> GeneratedGroup:
    """The full normaliser of the certified socle, by transport.

    On the standard side this is the wreath of the one-coordinate
    normaliser with the coordinate permutations; every transported
    generator is checked to normalise the socle, so a faulty certificate
    raises instead of propagating.
    """
    spec = ctx.spec
    gens = [coordinate_perm(spec, 0, g)
            for g in delta_normaliser_generators(ctx.m, ctx.k)]
    if ctx.l >= 2:
        gens.append(top_perm(spec, Perm.from_cycles(ctx.l, [tuple(range(ctx.l))])))
        gens.append(top_perm(spec, Perm.from_cycles(ctx.l, [(0, 1)])))
    back = ctx.point_map.inverse()
    transported = [y.conjugate(back) for y in gens]
    for z in transported:
        if not verify_normalises(z, ctx.socle):
            raise ContractViolation(
                "transported generator fails to normalise the socle"
            )
    return GeneratedGroup(group.degree, transported)


# -- cutting down to the normaliser of the group itself -------------------


def _canonical_coset_rep(chain: StabilizerChain, h: Perm) -> Perm:
    """The element of the coset (chain's group)*h minimising the base images."""
    cur = h
    for level in range(len(chain.base)):
        best = min(chain.vectors[level], key=lambda d: cur.images[d])
        cur = chain.transversal(level, best) * cur
    return cur


def normaliser_via_cosets(group: GeneratedGroup, big: GeneratedGroup,
                          budget: int | None = None) -> GeneratedGroup:
    """N_big(group), by testing one representative per right coset.

    Whether a representative normalises is a property of its whole coset,
    so the filtered representatives together with the group generate the
    normaliser exactly.
    """
    for x in group.generators:
        if not big.member(x):
            raise NotInGroup("the group must lie inside the ambient group")
    cap = DEFAULT_COSET_BUDGET if budget is None else budget
    chain = group.chain
    start = _canonical_coset_rep(chain, Perm.identity(group.degree))
    seen: dict[tuple[int, ...], Perm] = {start.images: start}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        for w in big.generators:
            c = _canonical_coset_rep(chain, h * w)
            if c.images not in seen:
                if len(seen) >= cap:
                    raise BudgetExceeded(
                        f"more than {cap} cosets; the index of the group "
                        "in the ambient group is too large"
                    )
                seen[c.images] = c
                queue.append(c)
    accepted = [h for h in seen.values() if verify_normalises(h, group)]
    gens = reduce_generators(list(group.generators) + accepted, group.degree)
    return GeneratedGroup(group.degree, gens)


def _normaliser_from_context(group: GeneratedGroup, ctx: PAContext,
                             budget: int | None) -> tuple[GeneratedGroup, int]:
    socle_norm = normaliser_of_socle_pa(group, ctx)
    ambient = GeneratedGroup(
        group.degree,
        reduce_generators(
            list(socle_norm.generators) + list(group.generators), group.degree
        ),
    )
    result = normaliser_via_cosets(group, ambient, budget)
    return result, ambient.order() // group.order()


def normaliser_large(group: GeneratedGroup,
                     classification: Classification | None = None,
                     budget: int | None = None) -> GeneratedGroup:
    """Normaliser of a group whose socle certificate is available.

    Anything normalising the group normalises its socle, so the search
    happens inside the transported socle normaliser.
    """
    cls = classification or classify(group)
    if cls.kind != "large" or cls.context is None:
        raise ValueError("no certificate; this is not a large group")
    result, _ = _normaliser_from_context(group, cls.context, budget)
    return result


def normaliser_almost_simple(group: GeneratedGroup,
                             budget: int | None = None) -> GeneratedGroup:
    """Normaliser of a group with a single nonabelian simple minimal normal.

    When the socle is an alternating group in a subsets action the
    transport route applies even if the action is imprimitive (the
    half-sized subsets give block systems); everything else at this scale
    is within reach of the backtrack.
    """
    normals = minimal_normal_subgroups(group)
    if len(normals) != 1 or not is_simple_nonabelian(normals[0]):
        raise ValueError("not almost simple: socle is not one simple factor")
    for m, k, l in large_parameters(group.degree):
        if l != 1:
            continue
        ctx = try_verify_large(group, m, k, 1)
        if ctx is not None:
            result, _ = _normaliser_from_context(group, ctx, budget)
            return result
    return normaliser_small(group).group


# -- dispatcher -----------------------------------------------------------


def normaliser_in_sym_run(group: GeneratedGroup,
                          budget: int | None = None) -> NormaliserRun:
    """Normaliser in the full symmetric group, with run statistics."""
    cls = classify(group)
    if cls.kind == "large":
        result, cosets = _normaliser_from_context(group, cls.context, budget)
        branch = "large-PA" if cls.context.l >= 2 else "large-AS"
        return NormaliserRun(result, branch, cosets=cosets)
    config = BacktrackConfig(node_limit=budget) if budget is not None else None
    res = normaliser_small(group, config=config)
    return NormaliserRun(res.group, cls.kind, nodes=res.nodes)


def normaliser_in_sym(group: GeneratedGroup,
                      budget: int | None = None) -> GeneratedGroup:
    return normaliser_in_sym_run(group, budget).group


def normaliser_in_subgroup(group: GeneratedGroup, ambient: GeneratedGroup,
                           budget: int | None = None,
                           full: GeneratedGroup | None = None) -> GeneratedGroup:
    """N_ambient(group): the normaliser intersected with an arbitrary group.

    Runs the coset machinery on the full normaliser N: the stabiliser of
    the coset N*e under ambient's action on cosets of N is exactly the
    intersection, and its Schreier generators fall out of the orbit walk.
    This is exponential in the worst case; the budget caps the orbit.
    Pass ``full`` to reuse an already computed N.
    """
    if ambient.degree != group.degree:
        raise NotInGroup("ambient group acts on a different point set")
    if full is None:
        full = normaliser_in_sym(group, budget)
    cap = DEFAULT_COSET_BUDGET if budget is None else budget
    chain = full.chain
    identity = Perm.identity(group.degree)
    seen: dict[tuple[int, ...], Perm] = {
        _canonical_coset_rep(chain, identity).images: identity
    }
    queue = deque([identity])
    schreier: list[Perm] = []
    while queue:
        u = queue.popleft()
        for w in ambient.generators:
            v = u * w
            key = _canonical_coset_rep(chain, v).images
            known = seen.get(key)
            if known is None:
                if len(seen) >= cap:
                    raise BudgetExceeded(
                        f"more than {cap} cosets while intersecting"
                    )
                seen[key] = v
                queue.append(v)
            else:
                s = v * known.inverse()
                if not s.is_identity():
                    schreier.append(s)
    gens = reduce_generators(schreier, group.degree)
    return GeneratedGroup(group.degree, gens)
