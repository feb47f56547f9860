"""Backtrack normaliser against the brute-force oracle."""

import itertools

import pytest

from permnorm.backtrack import (
    BacktrackConfig,
    base_size_bound,
    normaliser_backtrack,
    normaliser_small,
    small_base,
    small_generating_set,
)
from permnorm.errors import BudgetExceeded, TrivialInput
from permnorm.group import GeneratedGroup, build_chain, equal_groups
from permnorm.oracle import brute_force_normaliser, verify_normalises
from permnorm.perm import parse_perm


def grp(degree, *cycle_strings):
    return GeneratedGroup(degree, [parse_perm(degree, s) for s in cycle_strings])


CASES = [
    grp(4, "(0,1,2,3)"),                               # C_4
    grp(4, "(0,1)(2,3)", "(0,2)(1,3)"),                # V_4, transitive
    grp(4, "(0,1,2)", "(1,2,3)"),                      # A_4
    grp(5, "(0,1,2,3,4)"),                             # C_5
    grp(5, "(0,1,2,3,4)", "(1,4)(2,3)"),               # D_5
    grp(5, "(0,1,2,3,4)", "(1,2,4,3)"),                # F_20
    grp(5, "(0,1,2)", "(0,1,2,3,4)"),                  # A_5
    grp(6, "(0,1,2,3,4,5)"),                           # C_6
    grp(7, "(0,1,2,3,4,5,6)", "(1,2,4)(3,6,5)"),       # F_21
    grp(5, "(0,1)", "(2,3,4)"),                        # intransitive C_2 x C_3
]


@pytest.mark.parametrize("group", CASES, ids=lambda g: f"deg{g.degree}o{g.order()}")
def test_matches_oracle(group):
    got = normaliser_small(group).group
    want = brute_force_normaliser(group)
    assert equal_groups(got, want)
    for h in got.generators:
        assert verify_normalises(h, group)


SLOW_CASES = [
    grp(8, "(0,1,2,3,4,5,6)", "(0,7)(1,6)(2,3)(4,5)"),  # PSL(2,7) on the line
    grp(6, "(0,1,2,3,4,5)", "(0,1)"),                   # S_6
]


@pytest.mark.parametrize("group", SLOW_CASES, ids=lambda g: f"deg{g.degree}o{g.order()}")
def test_matches_oracle_slow(group):
    got = normaliser_small(group).group
    want = brute_force_normaliser(group)
    assert equal_groups(got, want)


def test_known_orders():
    assert normaliser_small(grp(5, "(0,1,2,3,4)")).group.order() == 20
    assert normaliser_small(grp(4, "(0,1,2,3)")).group.order() == 8
    assert normaliser_small(grp(7, "(0,1,2,3,4,5,6)")).group.order() == 42


def test_affine_group_of_field_with_eight_elements():
    # Field elements labelled by bit patterns over 1, t, t^2 with
    # t^3 = t + 1: adding 1 toggles the low bit, multiplying by t is a
    # 7-cycle on the nonzero labels.  The normaliser adjoins exactly the
    # squaring map (2,4,6)(3,5,7).
    agl = grp(8, "(0,1)(2,3)(4,5)(6,7)", "(1,2,4,3,6,7,5)")
    assert agl.order() == 56
    got = normaliser_small(agl).group
    assert got.order() == 168
    assert got.member(parse_perm(8, "(2,4,6)(3,5,7)"))
    assert equal_groups(got, brute_force_normaliser(agl))


def test_prune_flags_do_not_change_answers():
    groups = [
        grp(5, "(0,1,2,3,4)"),
        grp(5, "(0,1,2,3,4)", "(1,2,4,3)"),
        grp(4, "(0,1,2)", "(1,2,3)"),
        grp(6, "(0,1,2,3,4,5)"),
        grp(5, "(0,1)", "(2,3,4)"),
    ]
    for group in groups:
        reference = None
        for ct, inj, cd in itertools.product([True, False], repeat=3):
            cfg = BacktrackConfig(
                cycle_type_prune=ct, injectivity_prune=inj, chain_descent=cd
            )
            got = normaliser_backtrack(group, config=cfg).group
            if reference is None:
                reference = got
            else:
                assert equal_groups(got, reference)


def test_node_limit():
    with pytest.raises(BudgetExceeded):
        normaliser_backtrack(
            grp(6, "(0,1,2,3,4,5)", "(0,1)"),
            config=BacktrackConfig(node_limit=3),
        )


def test_trivial_rejected():
    with pytest.raises(TrivialInput):
        normaliser_small(GeneratedGroup(4, ()))


def test_small_generating_set():
    s6 = grp(6, "(0,1,2,3,4,5)", "(0,1)")
    padded = GeneratedGroup(
        6, list(s6.generators) + [g * h for g in s6.generators for h in s6.generators]
    )
    small = small_generating_set(padded)
    assert len(small) <= 3
    assert build_chain(small, 6).order() == 720
    # a cyclic group should come back with a single generator
    c7 = grp(7, "(0,1,2,3,4,5,6)")
    assert len(small_generating_set(GeneratedGroup(7, list(c7.generators) * 3))) <= 2


def test_rows_may_be_any_generating_set():
    a5 = grp(5, "(0,1,2)", "(0,1,2,3,4)")
    alt_rows = [parse_perm(5, "(0,1,2,3,4)"), parse_perm(5, "(0,1,4,3,2)")]
    assert build_chain(alt_rows, 5).order() == 60
    got = normaliser_backtrack(a5, rows=alt_rows).group
    assert equal_groups(got, brute_force_normaliser(a5))


class TestSmallBase:
    def test_regular_group_needs_one_point(self):
        assert small_base(grp(5, "(0,1,2,3,4)")) == [0]

    @pytest.mark.parametrize(
        "group,size",
        [
            (grp(8, "(0,1,2,3,4,5,6)", "(0,7)(1,6)(2,3)(4,5)"), 3),
            (grp(11, "(0,1,2,3,4,5,6,7,8,9,10)", "(2,6,10,7)(3,9,4,5)"), 4),
        ],
        ids=["deg8", "deg11"],
    )
    def test_known_sizes(self, group, size):
        base = small_base(group)
        assert len(base) == size
        assert len(base) <= base_size_bound(group.degree)

    def test_result_is_a_base(self):
        group = grp(7, "(0,1,2,3,4,5,6)", "(1,2,4)(3,6,5)")
        sub = group
        for point in small_base(group):
            sub = sub.point_stabiliser(point)
        assert sub.order() == 1

    def test_bound_values(self):
        assert base_size_bound(8) == 32
        assert base_size_bound(32) == 36
