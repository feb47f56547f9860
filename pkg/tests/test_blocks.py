"""Orbits, block systems and primitivity, checked against partition scans."""

from itertools import combinations

import pytest

from permnorm.group import (
    GeneratedGroup,
    minimal_block_system,
    normal_closure,
    orbit_of,
    orbit_partition,
)
from permnorm.perm import Perm, parse_perm


def grp(degree, *cycle_strings):
    return GeneratedGroup(degree, [parse_perm(degree, s) for s in cycle_strings])


def is_block(group, block):
    """Direct check: every generator maps the block onto itself or clean off it."""
    block = frozenset(block)
    seen = {block}
    frontier = [block]
    while frontier:
        current = frontier.pop()
        for g in group.generators:
            image = frozenset(g.images[x] for x in current)
            if image & block and image != block:
                return False
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return True


def primitive_by_scan(group):
    """Primitivity by scanning all 2-generated candidate blocks.

    Sound for transitive groups: any nontrivial block system has a block
    containing {a, b} for some pair, and the minimal block containing the
    pair refines it.
    """
    n = group.degree
    for a, b in combinations(range(n), 2):
        blocks = minimal_block_system(group.generators, n, (a, b))
        if 1 < len(next(bl for bl in blocks if a in bl)) < n:
            return False
    return True


def test_orbits():
    g = grp(7, "(0,1,2)", "(4,5)")
    parts = orbit_partition(g.generators, 7)
    assert sorted(map(sorted, parts)) == [[0, 1, 2], [3], [4, 5], [6]]
    assert set(orbit_of(g.generators, 4)) == {4, 5}
    assert not g.is_transitive()
    assert grp(5, "(0,1,2,3,4)").is_transitive()


def test_minimal_block_systems_d4():
    d4 = grp(4, "(0,1,2,3)", "(1,3)")
    blocks = minimal_block_system(d4.generators, 4, (0, 2))
    assert sorted(map(sorted, blocks)) == [[0, 2], [1, 3]]
    for bl in blocks:
        assert is_block(d4, bl)


def test_primitivity_matches_scan_small_degrees():
    cases = [
        grp(4, "(0,1,2,3)"),                       # C_4: imprimitive
        grp(4, "(0,1,2,3)", "(1,3)"),              # D_4: imprimitive
        grp(4, "(0,1,2)", "(1,2,3)"),              # A_4: primitive
        grp(5, "(0,1,2,3,4)"),                     # C_5: primitive (prime)
        grp(6, "(0,1,2,3,4,5)"),                   # C_6: imprimitive
        grp(6, "(0,1,2,3,4,5)", "(1,5)(2,4)"),     # D_6: imprimitive
        grp(6, "(0,1,2,3,4,5)", "(0,1)"),          # S_6: primitive
        grp(8, "(0,1,2,3,4,5,6,7)", "(1,7)(2,6)(3,5)"),  # D_8: imprimitive
    ]
    for g in cases:
        assert g.is_primitive() == primitive_by_scan(g), g.generators


def test_block_witness_is_a_block():
    d6 = grp(6, "(0,1,2,3,4,5)", "(1,5)(2,4)")
    witness = d6.nontrivial_block_system()
    assert witness is not None
    sizes = {len(b) for b in witness}
    assert len(sizes) == 1
    size = sizes.pop()
    assert 1 < size < 6
    for bl in witness:
        assert is_block(d6, bl)
    s5 = grp(5, "(0,1,2,3,4)", "(0,1)")
    assert s5.nontrivial_block_system() is None


def test_intransitive_not_primitive():
    g = grp(6, "(0,1,2)", "(3,4,5)")
    assert not g.is_primitive()


def test_normal_closure():
    s4 = grp(4, "(0,1,2,3)", "(0,1)")
    v4 = normal_closure(s4.generators, [parse_perm(4, "(0,1)(2,3)")], 4)
    assert v4.order() == 4
    a4 = normal_closure(s4.generators, [parse_perm(4, "(0,1,2)")], 4)
    assert a4.order() == 12
    # Closure of a generator set is the whole group.
    whole = normal_closure(s4.generators, [s4.generators[1]], 4)
    assert whole.order() == 24


def test_normal_closure_is_invariant():
    s4 = grp(4, "(0,1,2,3)", "(0,1)")
    v4 = normal_closure(s4.generators, [parse_perm(4, "(0,1)(2,3)")], 4)
    for g in s4.generators:
        for h in v4.generators:
            assert v4.member(h.conjugate(g))
