"""Regenerate the shipped corpus of group files.

Every entry is built from first principles (field arithmetic, matrix
actions, subset actions, wreath constructions), its order is asserted
against the known value before anything is written, and the output goes to
src/permnorm/corpus/<name>.grp.  The script is deterministic, so rerunning
it reproduces the files byte for byte.

Run from the repository root:  python3 tools/gen_corpus.py
"""

from __future__ import annotations

import sys
from pathlib import Path

from permnorm.group import GeneratedGroup
from permnorm.groupfile import GroupFile, save_group_file
from permnorm.perm import Perm
from permnorm.wreath import product_socle, subsets_action, top_perm, wreath

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "permnorm" / "corpus"


# -- prime fields and F_8 -----------------------------------------------


def primitive_root(p: int) -> int:
    factors = {q for q in range(2, p) if (p - 1) % q == 0
               and all(q % d for d in range(2, q))}
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


def projective_line_gens(p: int) -> tuple[Perm, Perm, Perm]:
    """x+1, -1/x, and gx on the p+1 points of PG(1,p); infinity is point p."""
    inf = p

    def t(x):
        return inf if x == inf else (x + 1) % p

    def s(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return (-pow(x, p - 2, p)) % p

    g = primitive_root(p)

    def m(x):
        return inf if x == inf else (g * x) % p

    pts = range(p + 1)
    return Perm([t(x) for x in pts]), Perm([s(x) for x in pts]), Perm([m(x) for x in pts])


def f8_mul(a: int, b: int) -> int:
    """Multiply in F_2[y]/(y^3 + y + 1), elements as 3-bit masks."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 8:
            a ^= 0b1011
        b >>= 1
    return r


def f8_inv(a: int) -> int:
    for b in range(1, 8):
        if f8_mul(a, b) == 1:
            return b
    raise ValueError("not invertible")


def affine_f8_gens() -> tuple[Perm, Perm, Perm]:
    """x+1, yx, and the squaring map on the 8 elements of F_8."""
    add1 = Perm([x ^ 1 for x in range(8)])
    muly = Perm([f8_mul(2, x) for x in range(8)])
    frob = Perm([f8_mul(x, x) for x in range(8)])
    return add1, muly, frob


def projective_f8_gens() -> tuple[Perm, Perm, Perm, Perm]:
    """x+1, yx, 1/x, x^2 on the 9 points of PG(1,8); infinity is point 8."""
    inf = 8

    def lift(f):
        return Perm([f(x) if x != inf else inf for x in range(9)])

    def s(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return f8_inv(x)

    return (
        lift(lambda x: x ^ 1),
        lift(lambda x: f8_mul(2, x)),
        Perm([s(x) for x in range(9)]),
        lift(lambda x: f8_mul(x, x)),
    )


def linear_f2_cubed(rows: list[int], translate: int | None = None,
                    nonzero_only: bool = False) -> Perm:
    """The map of F_2^3 sending basis vector e_i to the mask rows[i]."""

    def apply(v: int) -> int:
        out = 0
        for i in range(3):
            if v >> i & 1:
                out ^= rows[i]
        if translate is not None:
            out ^= translate
        return out

    if nonzero_only:
        return Perm([apply(v) - 1 for v in range(1, 8)])
    return Perm([apply(v) for v in range(8)])


# companion matrix of y^3 + y + 1 (order 7) and a transvection
_GL32_A = [0b010, 0b100, 0b011]
_GL32_B = [0b011, 0b010, 0b100]


# -- the corpus table ---------------------------------------------------


def cyc(degree: int, *cycles) -> Perm:
    return Perm.from_cycles(degree, list(cycles))


def affine_prime(p: int, mult: int) -> list[Perm]:
    return [
        Perm([(x + 1) % p for x in range(p)]),
        Perm([(mult * x) % p for x in range(p)]),
    ]


def socle_with_swap(m: int) -> list[Perm]:
    soc, spec = product_socle(m, 1, 2)
    return list(soc.generators) + [top_perm(spec, Perm((1, 0)))]


def build_entries() -> list[tuple[str, int, int, list[Perm]]]:
    t5, s5_, m5 = projective_line_gens(5)
    t7, s7_, m7 = projective_line_gens(7)
    t11, s11, _ = projective_line_gens(11)
    t13, s13, _ = projective_line_gens(13)
    a1, my, fr = affine_f8_gens()
    p1, pm, ps, pf = projective_f8_gens()

    entries: list[tuple[str, int, int, list[Perm]]] = [
        # degree 5
        ("c5", 5, 5, [cyc(5, (0, 1, 2, 3, 4))]),
        ("d5", 5, 10, [cyc(5, (0, 1, 2, 3, 4)), cyc(5, (1, 4), (2, 3))]),
        ("f20", 5, 20, affine_prime(5, 2)),
        ("a5", 5, 60, list(GeneratedGroup.alternating(5).generators)),
        ("s5", 5, 120, list(GeneratedGroup.symmetric(5).generators)),
        # degree 6
        ("psl25_6", 6, 60, [t5, s5_]),
        ("pgl25_6", 6, 120, [t5, s5_, m5]),
        ("a6", 6, 360, list(GeneratedGroup.alternating(6).generators)),
        ("s6", 6, 720, list(GeneratedGroup.symmetric(6).generators)),
        # degree 7
        ("c7", 7, 7, [cyc(7, (0, 1, 2, 3, 4, 5, 6))]),
        ("f21", 7, 21, affine_prime(7, 2)),
        ("f42", 7, 42, affine_prime(7, 3)),
        ("psl32_7", 7, 168, [linear_f2_cubed(_GL32_A, nonzero_only=True),
                             linear_f2_cubed(_GL32_B, nonzero_only=True)]),
        ("a7", 7, 2520, list(GeneratedGroup.alternating(7).generators)),
        ("s7", 7, 5040, list(GeneratedGroup.symmetric(7).generators)),
        # degree 8
        ("agl18", 8, 56, [a1, my]),
        ("agammal18", 8, 168, [a1, my, fr]),
        ("psl27_8", 8, 168, [t7, s7_]),
        ("pgl27_8", 8, 336, [t7, s7_, m7]),
        ("agl32_8", 8, 1344, [linear_f2_cubed(_GL32_A), linear_f2_cubed(_GL32_B),
                              Perm([v ^ 1 for v in range(8)])]),
        ("a8", 8, 20160, list(GeneratedGroup.alternating(8).generators)),
        ("s8", 8, 40320, list(GeneratedGroup.symmetric(8).generators)),
        # degree 9 to 14
        ("psl28_9", 9, 504, [p1, pm, ps]),
        ("pgammal28_9", 9, 1512, [p1, pm, ps, pf]),
        ("a5_pairs", 10, 60, list(subsets_action(5, 2, "alternating").generators)),
        ("s5_pairs", 10, 120, list(subsets_action(5, 2, "symmetric").generators)),
        ("m11", 11, 7920, [cyc(11, tuple(range(11))),
                           cyc(11, (2, 6, 10, 7), (3, 9, 4, 5))]),
        ("psl211_12", 12, 660, [t11, s11]),
        ("m12", 12, 95040, [cyc(12, tuple(range(11))),
                            cyc(12, (2, 6, 10, 7), (3, 9, 4, 5)),
                            cyc(12, (0, 11), (1, 10), (2, 5), (3, 7), (4, 8), (6, 9))]),
        ("psl213_14", 14, 1092, [t13, s13]),
        # subset actions and product-action wreaths
        ("a6_pairs", 15, 360, list(subsets_action(6, 2, "alternating").generators)),
        ("s6_pairs", 15, 720, list(subsets_action(6, 2, "symmetric").generators)),
        ("s7_pairs", 21, 5040, list(subsets_action(7, 2, "symmetric").generators)),
        ("a5wrc2", 25, 7200, socle_with_swap(5)),
        ("s5wrs2", 25, 28800, list(wreath(5, 1, 2, "product")[0].generators)),
        ("a8_pairs", 28, 20160, list(subsets_action(8, 2, "alternating").generators)),
        ("s8_pairs", 28, 40320, list(subsets_action(8, 2, "symmetric").generators)),
        ("a6wrc2", 36, 259200, socle_with_swap(6)),
    ]
    return entries


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    entries = build_entries()
    names = [name for name, *_ in entries]
    assert len(set(names)) == len(names), "duplicate corpus names"
    for name, degree, order, gens in entries:
        group = GeneratedGroup(degree, gens)
        got = group.order()
        assert got == order, f"{name}: built order {got}, expected {order}"
        assert group.is_primitive(), f"{name}: not primitive"
        save_group_file(OUT_DIR / f"{name}.grp", GroupFile(degree, tuple(gens), name, order))
        print(f"wrote {name}.grp  degree {degree:3d}  order {order}")
    print(f"{len(entries)} files in {OUT_DIR}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
