"""Stabilizer chains against plain multiplication closure."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from permnorm.group import (
    GeneratedGroup,
    StabilizerChain,
    build_chain,
    equal_groups,
    reduce_generators,
)
from permnorm.oracle import closure_elements
from permnorm.perm import Perm, parse_perm


def grp(degree, *cycle_strings):
    return GeneratedGroup(degree, [parse_perm(degree, s) for s in cycle_strings])


def test_orders_match_closure_on_assorted_groups():
    cases = [
        grp(5, "(0,1,2,3,4)"),
        grp(5, "(0,1,2,3,4)", "(1,4)(2,3)"),
        grp(4, "(0,1,2,3)", "(0,1)"),
        grp(5, "(0,1,2)", "(0,1,2,3,4)"),
        grp(6, "(0,1,2,3,4,5)", "(0,1)"),
        grp(7, "(0,1,2,3,4,5,6)", "(1,2,4)(3,6,5)"),
        grp(8, "(0,1)(2,3)(4,5)(6,7)", "(1,2)(5,6)", "(2,4)(3,5)"),
    ]
    for g in cases:
        assert g.order() == len(closure_elements(g, 10**5))


def test_membership_agrees_with_closure():
    g = grp(5, "(0,1,2,3,4)", "(1,4)(2,3)")
    members = closure_elements(g, 10**5)
    for images in [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4), (4, 3, 2, 1, 0), (0, 2, 4, 1, 3)]:
        assert g.member(Perm(images)) == (images in members)


def test_trivial_group():
    g = GeneratedGroup(4, [Perm.identity(4)])
    assert g.order() == 1
    assert g.member(Perm.identity(4))
    assert not g.member(Perm.from_cycles(4, [(0, 1)]))


def test_base_points_are_smallest_moved():
    g = grp(6, "(2,3,4,5)", "(2,3)")
    # Nothing moves 0 or 1, so the base must start at 2.
    assert g.chain.base[0] == 2


def test_base_prefix_is_respected():
    g = grp(5, "(0,1,2,3,4)", "(1,4)(2,3)")
    chain = build_chain(g.generators, 5, base_prefix=(3,))
    assert chain.base[0] == 3
    assert chain.order() == g.order()


def test_base_image_element_round_trip():
    g = grp(5, "(0,1,2)", "(0,1,2,3,4)")  # A_5
    chain = g.chain
    base = chain.base
    for images in sorted(closure_elements(g, 10**5))[:: max(1, g.order() // 50)]:
        p = Perm(images)
        targets = [p.images[b] for b in base]
        assert chain.base_image_element(targets) == p


def test_base_image_element_spec_example():
    # In S_3 with base (0, 1), targets (1, 2) give the 3-cycle.
    g = grp(3, "(0,1,2)", "(0,1)")
    chain = build_chain(g.generators, 3, base_prefix=(0, 1))
    y = chain.base_image_element((1, 2))
    assert y == parse_perm(3, "(0,1,2)")


def test_base_image_element_absent():
    g = grp(5, "(0,1,2,3,4)")  # C_5: no element sends 0 to 0 except identity
    chain = g.chain
    assert chain.base_image_element((0,)) == Perm.identity(5)
    # A_4 has no element with base images outside the orbit structure.
    a4 = grp(4, "(0,1,2)", "(1,2,3)")
    targets = tuple(a4.chain.base)
    wrong = list(targets)
    wrong[-1] = next(
        p
        for p in range(4)
        if p not in a4.chain.vectors[len(targets) - 1]
    )
    assert a4.chain.base_image_element(tuple(wrong)) is None


def test_iter_elements_exact_and_deterministic():
    g = grp(4, "(0,1,2,3)", "(0,1)")
    first = [p.images for p in g.chain.iter_elements()]
    second = [p.images for p in g.chain.iter_elements()]
    assert first == second
    assert len(first) == 24
    assert len(set(first)) == 24


def test_point_stabiliser_orders():
    a5 = grp(5, "(0,1,2)", "(0,1,2,3,4)")
    stab = a5.point_stabiliser(4)
    assert stab.order() == 12
    assert all(g.images[4] == 4 for g in stab.generators)
    s6 = grp(6, "(0,1,2,3,4,5)", "(0,1)")
    assert s6.point_stabiliser(0).order() == 120


def test_reduce_generators_drops_redundant():
    s4 = grp(4, "(0,1,2,3)", "(0,1)")
    padded = list(s4.generators) + [
        Perm.identity(4),
        s4.generators[0],
        s4.generators[0] * s4.generators[1],
    ]
    reduced = reduce_generators(padded, 4)
    assert len(reduced) == 2
    assert equal_groups(GeneratedGroup(4, reduced), s4)


def test_reduce_generators_bound():
    rng = random.Random(7)
    for degree in (5, 6, 7):
        sym = GeneratedGroup.symmetric(degree)
        xs = [sym.random_element(rng) for _ in range(30)]
        reduced = reduce_generators(xs, degree)
        assert len(reduced) <= degree
        assert equal_groups(
            GeneratedGroup(degree, reduced), GeneratedGroup(degree, xs)
        )


def test_random_element_lands_in_group():
    rng = random.Random(3)
    g = grp(5, "(0,1,2,3,4)", "(1,4)(2,3)")
    for _ in range(20):
        assert g.member(g.random_element(rng))


def test_extend_matches_batch_build():
    g = grp(6, "(0,1,2,3,4,5)", "(0,1)")
    chain = StabilizerChain(6)
    for gen in g.generators:
        chain.extend(gen)
    assert chain.order() == 720
    assert chain.base == g.chain.base


def test_symmetric_and_alternating_constructors():
    for n in range(1, 8):
        assert GeneratedGroup.symmetric(n).order() == math.factorial(n)
    for n in range(3, 8):
        assert GeneratedGroup.alternating(n).order() == math.factorial(n) // 2


@settings(max_examples=30, deadline=None)
@given(
    st.integers(3, 6).flatmap(
        lambda n: st.lists(
            st.permutations(list(range(n))).map(Perm), min_size=1, max_size=3
        )
    )
)
def test_chain_order_equals_closure(gens):
    g = GeneratedGroup(gens[0].degree, gens)
    assert g.order() == len(closure_elements(g, 10**5))
    assert g.order() % 1 == 0
    for gen in gens:
        assert g.member(gen)
