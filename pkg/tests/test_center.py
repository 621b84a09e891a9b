from fractions import Fraction

import pytest

from sklyanin.center import (F_tau_invariant, H3Element, central_g, g_formula, identify_rho, independence_witness,
                             tau_equivariance, veronese_identity_check, zeta3)
from sklyanin.cpoly import CPoly
from sklyanin.freealg import NCPoly, cached_system
from sklyanin.params import SklyaninParams

z1, z2, z3, g = (CPoly.var(v) for v in ("z1", "z2", "z3", "g"))
ZETA = zeta3()


def lin(a, b, c):
    return NCPoly.linear([a, b, c])


def F6_printed():
    ell = (z1 + z2 + z3) / 108
    Phi = ell ** 3 - z1 * z2 * z3 * Fraction(1331, 373248)
    return g ** 6 + ell * g ** 4 * 3 + ell ** 2 * g ** 2 * 3 + Phi


def test_n2_presentation(cp2):
    assert cp2.n == 2
    assert cp2.c == []
    assert cp2.F == g ** 2 - (z1 ** 3 + z2 ** 3 + z3 ** 3) * 4 - z1 * z2 * z3 * 4
    rs = cp2.rs
    for i, ch in enumerate("xyz"):
        assert cp2.z[i] == rs.normal_form(NCPoly.word(ch + ch))


def test_n2_g_matches_printed_form(cp2):
    c = 2
    printed = NCPoly({"yyy": c, "yxz": 1, "xyz": -1, "xxx": -c})
    assert cp2.g == printed


def test_g_formula_proportional_for_family():
    for c in (2, 3, Fraction(1, 2)):
        p = SklyaninParams(1, 1, c)
        k = c ** 3 - 1
        assert g_formula(p) == NCPoly({"yyy": c * k, "yxz": k, "xyz": -k, "xxx": -c * k})


def test_n6_presentation(cp6):
    assert cp6.n == 6
    assert cp6.rho.name == "rho3"
    assert list(cp6.c) == [0]
    assert cp6.F == F6_printed()
    assert cp6.alpha == Fraction(1, 108)
    assert cp6.structure.mu == Fraction(1331, 373248)
    assert cp6.F.coeff_in("g", 2) == cp6.ell ** 2 * 3


def test_n6_g_and_basis(cp6):
    assert cp6.g == NCPoly({"xxx": 1, "yxz": -1})
    expected = [lin(1, 1, 1), lin(1, ZETA ** 2, ZETA), lin(1, ZETA, ZETA ** 2)]
    assert [lin(*v) for v in cp6.basis.vectors] == expected


def test_n6_z_are_sixth_powers(cp6):
    rs = cp6.rs
    for i, (a, b, c) in enumerate([(1, 1, 1), (1, ZETA ** 2, ZETA), (1, ZETA, ZETA ** 2)]):
        assert cp6.z[i] == rs.power(lin(a, b, c), 6)


def test_printed_veronese_identity(cp6):
    rs = cp6.rs
    us = [rs.power(lin(*v), 2) for v in cp6.basis.vectors]
    total = rs.power(cp6.g, 2)
    k = Fraction(1, 108)
    for u in us:
        total = total + rs.power(u, 3).scale(k)
    total = total - rs.product(*us).scale(k * Fraction(132, 8) * ZETA ** 2)
    assert not total
    assert veronese_identity_check(cp6)


def test_veronese_vacuous_for_n2(cp2):
    assert veronese_identity_check(cp2)


def test_tau_symmetry(cp2, cp6):
    for cp in (cp2, cp6):
        assert tau_equivariance(cp)
        assert F_tau_invariant(cp.F)


def test_generators_independent_below_weight_3n(cp2):
    assert independence_witness(cp2.rs, cp2.z, cp2.g, 2)


def test_weighted_homogeneous(cp2, cp6):
    for cp in (cp2, cp6):
        n = cp.n
        assert cp.F.is_weighted_homogeneous((n, n, n, 3))
        assert cp.F.weighted_degrees((n, n, n, 3)) == {3 * n}


def test_rho_translation_points():
    r = identify_rho((1, -1, -1))
    assert r.key == (0, 1)
    h = H3Element(0, 1, 0)
    # transpose convention: the point map of rho2 moves the origin to [1:-zeta:0]
    from sklyanin.curve import ORIGIN, ProjPoint
    assert h.point_map(ORIGIN) == ProjPoint(1, -ZETA, 0)


def test_g_central_123():
    p = SklyaninParams(1, 2, 3)
    assert central_g(p, cached_system(p, 4))


def test_center_json_round_trip(cp6):
    doc = cp6.to_json()
    assert CPoly.from_json(doc["F"]) == cp6.F
    assert cp6.dumps() == cp6.dumps()
