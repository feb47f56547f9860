"""Brute-force reference computations.

Expected orders here are hand-derived from first principles so the oracle
itself is pinned down before anything else trusts it:

* N(C_5) in S_5: C_5 is self-centralising, Aut(C_5) = C_4 is realised by
  conjugation (x -> x^2 maps onto (1,2,4,3) acting on exponents), so the
  normaliser is the Frobenius group of order 20.
* N(C_4) in S_4: same argument gives order 4 * 2 = 8, the dihedral group.
* N(V_4) in S_4: V_4 is normal, so the whole of S_4.
* N(D_5) in S_5: the Sylow 5-subgroup is characteristic in D_5, so the
  normaliser sits inside N(C_5) = F_20, and F_20 does normalise D_5.
"""

import pytest

from permnorm.errors import BudgetExceeded
from permnorm.group import GeneratedGroup
from permnorm.oracle import (
    OracleBudget,
    brute_force_intersection,
    brute_force_normaliser,
    closure_elements,
    verify_normalises,
)
from permnorm.perm import Perm, parse_perm


def grp(degree, *cycle_strings):
    return GeneratedGroup(degree, [parse_perm(degree, s) for s in cycle_strings])


def test_normaliser_of_c5():
    n = brute_force_normaliser(grp(5, "(0,1,2,3,4)"))
    assert n.order() == 20
    assert n.member(parse_perm(5, "(1,2,4,3)"))


def test_normaliser_of_c4():
    n = brute_force_normaliser(grp(4, "(0,1,2,3)"))
    assert n.order() == 8


def test_normaliser_of_v4_is_everything():
    n = brute_force_normaliser(grp(4, "(0,1)(2,3)", "(0,2)(1,3)"))
    assert n.order() == 24


def test_normaliser_of_d5():
    n = brute_force_normaliser(grp(5, "(0,1,2,3,4)", "(1,4)(2,3)"))
    assert n.order() == 20


def test_normaliser_of_a5():
    n = brute_force_normaliser(grp(5, "(0,1,2)", "(0,1,2,3,4)"))
    assert n.order() == 120


def test_normaliser_result_normalises():
    g = grp(5, "(0,1,2,3,4)")
    n = brute_force_normaliser(g)
    for h in n.generators:
        assert verify_normalises(h, g)
    assert not verify_normalises(parse_perm(5, "(0,1)"), g)


def test_degree_budget():
    c9 = GeneratedGroup(9, [Perm.from_cycles(9, [tuple(range(9))])])
    with pytest.raises(BudgetExceeded):
        brute_force_normaliser(c9)
    assert brute_force_normaliser(c9, OracleBudget(max_degree=9)).order() == 54


def test_order_budget():
    g = grp(6, "(0,1,2,3,4,5)", "(0,1)")
    with pytest.raises(BudgetExceeded):
        closure_elements(g, 100)


def test_intersection():
    s4 = grp(4, "(0,1,2,3)", "(0,1)")
    a4 = grp(4, "(0,1,2)", "(1,2,3)")
    c4 = grp(4, "(0,1,2,3)")
    d4 = grp(4, "(0,1,2,3)", "(1,3)")
    assert brute_force_intersection(c4, a4).order() == 2
    assert brute_force_intersection(d4, a4).order() == 4
    assert brute_force_intersection(s4, a4).order() == 12
