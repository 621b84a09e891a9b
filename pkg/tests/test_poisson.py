import random
from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from sklyanin.cpoly import CPoly
from sklyanin.poisson import (bracket_from_F, brackets_homogeneous, casimir_check, dilation_residue, euler_residue,
                              jacobi_residues, leibniz_check)

z1, z2, z3, g = (CPoly.var(v) for v in ("z1", "z2", "z3", "g"))
F2 = g ** 2 - (z1 ** 3 + z2 ** 3 + z3 ** 3) * 4 - z1 * z2 * z3 * 4
ell = (z1 + z2 + z3) / 108
F6 = g ** 6 + ell * g ** 4 * 3 + ell ** 2 * g ** 2 * 3 + ell ** 3 - z1 * z2 * z3 * Fraction(1331, 373248)
STRUCTS = {2: bracket_from_F(F2), 6: bracket_from_F(F6)}


def test_n2_bracket_values():
    ps = STRUCTS[2]
    assert ps.bracket(z1, z2) == z3 ** 2 * (-12) - z1 * z2 * 4
    assert not ps.bracket(z1, z1)
    assert ps.bracket(z2, z1) == -ps.bracket(z1, z2)


def test_brackets_match_sympy_gradient():
    s1, s2, s3, sg = sp.symbols("z1 z2 z3 g")
    for ps in STRUCTS.values():
        expr = ps.F.to_sympy()
        for (u, v, w) in (("z1", "z2", "z3"), ("z2", "z3", "z1"), ("z3", "z1", "z2")):
            mine = ps.bracket(CPoly.var(u), CPoly.var(v)).to_sympy()
            assert sp.expand(mine - sp.diff(expr, sp.Symbol(w))) == 0


def test_jacobi_and_casimir():
    for ps in STRUCTS.values():
        assert all(not r for r in jacobi_residues(ps))
        assert casimir_check(ps)


def test_trivial_structure():
    ps = bracket_from_F(CPoly())
    assert all(not r for r in jacobi_residues(ps))


def test_euler_and_homogeneity():
    for n, ps in STRUCTS.items():
        assert not euler_residue(ps.F, n)
        assert brackets_homogeneous(ps, n)


def test_dilation_on_random_betas():
    rng = random.Random(3)
    for _ in range(50):
        beta = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
        for n, ps in STRUCTS.items():
            assert not dilation_residue(ps.F, n, beta)


def test_leibniz_with_g():
    ps = STRUCTS[2]
    assert not ps.bracket(z1 * z2, g)
    assert leibniz_check(ps, z1, z1, z2)


coef = st.integers(-3, 3)
monos = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))
polys = st.dictionaries(monos, coef, max_size=3).map(lambda d: CPoly({k: Fraction(v) for k, v in d.items() if v}))


@given(polys, polys, polys)
@settings(max_examples=30, deadline=None)
def test_leibniz_random(p, q, r):
    assert leibniz_check(STRUCTS[2], p, q, r)


@given(polys, polys)
@settings(max_examples=30, deadline=None)
def test_antisymmetry_random(p, q):
    ps = STRUCTS[6]
    assert ps.bracket(p, q) == -ps.bracket(q, p)
