"""Transport-based normalisers: certificates, socle normalisers, coset filtering."""

import pytest

from permnorm.errors import BudgetExceeded, NotInGroup
from permnorm.group import GeneratedGroup, equal_groups, is_subgroup
from permnorm.homs import perm_iso_from_group_iso
from permnorm.large import (
    _canonical_coset_rep,
    delta_normaliser_generators,
    iso_socle_to_standard,
    normaliser_almost_simple,
    normaliser_in_subgroup,
    normaliser_in_sym,
    normaliser_in_sym_run,
    normaliser_large,
    normaliser_of_socle_pa,
    normaliser_via_cosets,
    outer_aut_a6,
    try_verify_large,
)
from permnorm.oracle import (
    brute_force_intersection,
    brute_force_normaliser,
    verify_normalises,
)
from permnorm.perm import Perm, parse_perm
from permnorm.structure import classify
from permnorm.wreath import product_socle, subsets_action, top_perm, wreath


def grp(degree, *cycle_strings):
    return GeneratedGroup(degree, [parse_perm(degree, s) for s in cycle_strings])


def socle_with_swap(m, k):
    """A_m wr C_2 in product action on pairs of k-subset tuples."""
    soc, spec = product_socle(m, k, 2)
    swap = top_perm(spec, Perm.from_cycles(2, [(0, 1)]))
    return GeneratedGroup(spec.degree, list(soc.generators) + [swap])


AGL18 = grp(8, "(0,1)(2,3)(4,5)(6,7)", "(1,2,4,3,6,7,5)")
PSL27_8 = grp(8, "(0,1,2,3,4,5,6)", "(0,7)(1,6)(2,3)(4,5)")
C5 = grp(5, "(0,1,2,3,4)")


class TestIsoSocleToStandard:
    def test_natural_copy(self):
        a5 = GeneratedGroup.alternating(5)
        phi = iso_socle_to_standard(a5, 5, 1)
        assert phi.is_surjective()
        assert phi.image_group().order() == 60

    def test_pairs_copy_is_point_realisable(self):
        a5p = subsets_action(5, 2, "alternating")
        phi = iso_socle_to_standard(a5p, 5, 2)
        assert perm_iso_from_group_iso(phi) is not None

    def test_wrong_degree_of_alternating_group(self):
        with pytest.raises(ValueError):
            iso_socle_to_standard(GeneratedGroup.alternating(5), 6, 1)


class TestOuterAutA6:
    def test_is_an_automorphism(self):
        tau = outer_aut_a6(1)
        assert tau.is_surjective()
        assert tau.domain.order() == 360

    def test_not_induced_by_any_relabelling_of_six_points(self):
        assert perm_iso_from_group_iso(outer_aut_a6(1)) is None

    def test_square_is_inner(self):
        tau = outer_aut_a6(1)
        w = perm_iso_from_group_iso(tau.then(tau))
        assert w is not None
        assert tau.domain.member(w)

    def test_realisable_on_triples_but_outside_the_obvious_normaliser(self):
        # On the 20 half-sized subsets the exceptional automorphism is
        # induced by a point bijection, which is why the one-coordinate
        # normaliser needs the extra generator there.
        f = perm_iso_from_group_iso(outer_aut_a6(3))
        assert f is not None
        s6t = subsets_action(6, 3, "symmetric")
        obvious = GeneratedGroup(
            20, list(s6t.generators) + [delta_normaliser_generators(6, 3)[2]]
        )
        assert obvious.order() == 1440
        assert not obvious.member(f)
        assert verify_normalises(f, subsets_action(6, 3, "alternating"))


class TestDeltaNormaliser:
    def test_plain_parameters_give_the_symmetric_copy(self):
        gens = delta_normaliser_generators(5, 2)
        assert GeneratedGroup(10, gens).order() == 120

    def test_half_sized_subsets_add_complementation(self):
        gens = delta_normaliser_generators(6, 3)
        assert GeneratedGroup(20, gens).order() == 2880


class TestTryVerifyLarge:
    def test_pairs_action_certificate(self):
        a5p = subsets_action(5, 2, "alternating")
        ctx = try_verify_large(a5p, 5, 2, 1)
        assert ctx is not None
        f = ctx.point_map
        for x, y in zip(ctx.socle.generators, ctx.iota.images):
            assert x.conjugate(f) == y

    def test_wreath_certificate(self):
        g = socle_with_swap(5, 1)
        ctx = try_verify_large(g, 5, 1, 2)
        assert ctx is not None
        assert ctx.socle.order() == 3600

    def test_abelian_socle_is_rejected(self):
        assert try_verify_large(AGL18, 8, 1, 1) is None

    def test_plain_direct_product_is_rejected(self):
        # Without a coordinate-mixing element the minimal normal subgroups
        # are the two factors, not their product; no certificate exists.
        soc, _ = product_socle(5, 1, 2)
        assert try_verify_large(soc, 5, 1, 2) is None


class TestNormaliserOfSocle:
    @pytest.mark.parametrize("m,k", [(5, 1), (6, 1), (5, 2)])
    def test_index_over_socle(self, m, k):
        g = socle_with_swap(m, k)
        ctx = try_verify_large(g, m, k, 2)
        assert ctx is not None
        big = normaliser_of_socle_pa(g, ctx)
        assert all(verify_normalises(z, ctx.socle) for z in big.generators)
        # one-coordinate outer part squared, times the coordinate swap
        assert big.order() == ctx.socle.order() * 2**2 * 2


class TestNormaliserViaCosets:
    def test_normal_subgroup_of_the_ambient(self):
        a5 = GeneratedGroup.alternating(5)
        s5 = GeneratedGroup.symmetric(5)
        assert equal_groups(normaliser_via_cosets(a5, s5), s5)

    def test_ambient_equal_to_the_group(self):
        s5 = GeneratedGroup.symmetric(5)
        assert equal_groups(normaliser_via_cosets(s5, s5), s5)

    def test_cyclic_inside_symmetric_matches_backtrack(self):
        n = normaliser_via_cosets(C5, GeneratedGroup.symmetric(5))
        assert n.order() == 20
        assert equal_groups(n, brute_force_normaliser(C5))

    def test_rejects_non_subgroup(self):
        c4 = grp(4, "(0,1,2,3)")
        a4 = GeneratedGroup.alternating(4)
        with pytest.raises(NotInGroup):
            normaliser_via_cosets(c4, a4)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            normaliser_via_cosets(C5, GeneratedGroup.symmetric(5), budget=3)

    def test_canonical_representative_identifies_cosets(self):
        a4 = GeneratedGroup.alternating(4)
        s4 = GeneratedGroup.symmetric(4)
        reps = {}
        for h in s4.elements():
            key = _canonical_coset_rep(a4.chain, h).images
            reps.setdefault(key, []).append(h)
        assert len(reps) == 2
        for members in reps.values():
            h0 = members[0]
            assert all(a4.member(h * h0.inverse()) for h in members)


class TestNormaliserLarge:
    def test_wreath_of_alternating(self):
        g = socle_with_swap(5, 1)
        n = normaliser_large(g)
        assert n.order() == 14400
        assert is_subgroup(g, n)
        assert all(verify_normalises(z, g) for z in n.generators)

    def test_full_wreath_is_self_normalising(self):
        w, _ = wreath(5, 1, 2, "product")
        assert equal_groups(normaliser_large(w), w)

    def test_exceptional_coordinate_group(self):
        g = socle_with_swap(6, 1)
        assert normaliser_large(g).order() == 518400

    def test_needs_a_certificate(self):
        with pytest.raises(ValueError):
            normaliser_large(C5)


class TestNormaliserAlmostSimple:
    def test_alternating_natural(self):
        n = normaliser_almost_simple(GeneratedGroup.alternating(6))
        assert equal_groups(n, GeneratedGroup.symmetric(6))

    def test_subsets_action_with_blocks(self):
        s6t = subsets_action(6, 3, "symmetric")
        n = normaliser_almost_simple(s6t)
        assert n.order() == 1440
        assert is_subgroup(s6t, n)
        assert all(verify_normalises(z, s6t) for z in n.generators)

    def test_delegates_when_not_a_subsets_action(self):
        n = normaliser_almost_simple(PSL27_8)
        assert n.order() == 336
        assert equal_groups(n, brute_force_normaliser(PSL27_8))

    def test_rejects_abelian_socle(self):
        with pytest.raises(ValueError):
            normaliser_almost_simple(C5)


class TestDispatcher:
    def test_small_branch(self):
        run = normaliser_in_sym_run(C5)
        assert run.branch == "small"
        assert run.group.order() == 20
        assert run.nodes > 0

    def test_large_branch_with_statistics(self):
        run = normaliser_in_sym_run(socle_with_swap(5, 1))
        assert run.branch == "large-PA"
        assert run.group.order() == 14400
        assert run.cosets == 4

    def test_one_coordinate_groups_report_the_other_large_branch(self):
        assert normaliser_in_sym_run(GeneratedGroup.alternating(5)).branch == "large-AS"

    def test_branches_agree_on_overlap(self):
        from permnorm.backtrack import normaliser_small

        a5p = subsets_action(5, 2, "alternating")
        cls = classify(a5p)
        assert cls.kind == "large" and cls.within_small_bound
        assert equal_groups(normaliser_in_sym(a5p), normaliser_small(a5p).group)

    def test_matches_oracle_at_tiny_degree(self):
        a5 = GeneratedGroup.alternating(5)
        assert equal_groups(normaliser_in_sym(a5), brute_force_normaliser(a5))

    def test_symmetric_group_is_its_own_normaliser(self):
        s4 = GeneratedGroup.symmetric(4)
        assert equal_groups(normaliser_in_sym(s4), s4)


class TestNormaliserInSubgroup:
    def test_inside_alternating(self):
        a5 = GeneratedGroup.alternating(5)
        n = normaliser_in_subgroup(C5, a5)
        assert n.order() == 10
        assert equal_groups(n, brute_force_intersection(normaliser_in_sym(C5), a5))

    def test_inside_full_symmetric(self):
        s5 = GeneratedGroup.symmetric(5)
        assert equal_groups(
            normaliser_in_subgroup(C5, s5), normaliser_in_sym(C5)
        )

    def test_inside_itself(self):
        assert equal_groups(normaliser_in_subgroup(C5, C5), C5)

    def test_degree_mismatch(self):
        with pytest.raises(NotInGroup):
            normaliser_in_subgroup(C5, GeneratedGroup.symmetric(6))
