import math
from fractions import Fraction

import pytest

from sklyanin.errors import ForbiddenParameters, StructureError
from sklyanin.freealg import NCPoly
from sklyanin.poisson import bracket_from_F
from sklyanin.specialize import (Derivation, check_direction, commutator_level, equivariance_residue, hbar_algebra,
                                 lie_defect_element, lie_homomorphism_residue, lift_independence, maximize_level, naive_section,
                                 special_derivation, specialize)

ETA_100 = Fraction(1, 7)  # measured regression constant for (1,1,2) along (1,0,0)


@pytest.fixture(scope="module")
def run_100(cp2):
    res, alg, _ = specialize((1, 1, 2), (1, 0, 0), cp=cp2)
    return res, alg


def test_direction_checks():
    assert not check_direction((1, 1, 2), (0, 0, 0))
    assert check_direction((1, 1, 2), (1, 0, 0))
    assert check_direction((1, -1, -1), (0, 0, 1))


def test_directions_inside_family_rejected():
    # (1, 1, 2 + t) stays in the family S(1,1,c), all of PI degree 2
    assert not check_direction((1, 1, 2), (0, 0, 1))
    assert not check_direction((1, 1, 2), (1, 1, 0))
    with pytest.raises(ForbiddenParameters):
        hbar_algebra((1, 1, 2), (0, 0, 1))


def test_inside_family_commutators_vanish(cp2):
    alg = hbar_algebra((1, 1, 2), (0, 0, 1), check=False)
    N, comms = commutator_level(alg, naive_section(cp2).lifts(alg))
    assert N == math.inf
    with pytest.raises(StructureError):
        maximize_level(cp2, alg)


def test_level_and_eta(run_100, cp2):
    res, _ = run_100
    assert res.N == 1
    assert res.rounds == 1
    assert res.eta == ETA_100
    ps = bracket_from_F(cp2.F)
    for key, b in res.brackets.items():
        assert b == ps.brackets[key] * res.eta


def test_g_derivation_zero(run_100):
    res, _ = run_100
    assert not any(res.derivations["g"].values())


def test_dz_i_kills_x_i(run_100):
    res, _ = run_100
    for i, ch in enumerate("xyz"):
        assert not res.derivations[f"z{i + 1}"][ch]


@pytest.mark.parametrize("direction, eta", [
    ((2, 0, 0), Fraction(2, 7)),
    ((Fraction(1, 2), 0, 0), Fraction(1, 14)),
    ((0, 1, 0), Fraction(-1, 7)),
    ((1, 2, 3), Fraction(-1, 7)),
])
def test_eta_linear_in_direction(cp2, direction, eta):
    res, _, _ = specialize((1, 1, 2), direction, cp=cp2)
    assert res.N == 1
    assert res.eta == eta


def test_derivation_leibniz(run_100, cp2):
    res, _ = run_100
    rs = cp2.rs
    for z in ("z1", "z2", "z3"):
        d = Derivation(rs, res.derivations[z])
        for u, v in (("x", "y"), ("z", "x"), ("yz", "x")):
            lhs = d(rs.mul(NCPoly.word(u), NCPoly.word(v)))
            rhs = rs.mul(d(NCPoly.word(u)), NCPoly.word(v)) + rs.mul(NCPoly.word(u), d(NCPoly.word(v)))
            assert lhs == rhs


def test_derivations_respect_relations(run_100, cp2):
    res, _ = run_100
    from sklyanin.freealg import relations
    for z in ("z1", "z2", "z3"):
        d = Derivation(cp2.rs, res.derivations[z])
        for r in relations(cp2.params):
            assert not d(r)


def test_lift_independence(run_100, cp2):
    res, alg = run_100
    lift = naive_section(cp2).lifts(alg)["z1"]
    assert lift_independence(alg, lift, res.N, NCPoly.word("y"), NCPoly.word("xz"))


def test_lie_homomorphism_up_to_inner(run_100, cp2):
    res, alg = run_100
    for u, v in (("z1", "z2"), ("z2", "z3"), ("z3", "z1")):
        r = lie_defect_element(cp2, alg, res, u, v)
        for w in ("x", "y", "z"):
            resid = lie_homomorphism_residue(cp2, res, u, v, NCPoly.word(w))
            assert resid == cp2.rs.commutator(r, NCPoly.word(w))


@pytest.mark.xfail(strict=True, reason="with the monomial section at level 1 the residue is a nonzero inner "
                                       "derivation ad(r), see test_lie_homomorphism_up_to_inner")
def test_lie_homomorphism_exact(run_100, cp2):
    res, _ = run_100
    for w in ("x", "y", "z"):
        assert not lie_homomorphism_residue(cp2, res, "z1", "z2", NCPoly.word(w))


def test_tau_equivariance_of_derivations(run_100, cp2):
    res, _ = run_100
    for w in ("x", "y", "z"):
        assert not equivariance_residue(cp2, res, NCPoly.word(w))


def test_special_derivation_matches_table(run_100, cp2):
    res, alg = run_100
    lift = naive_section(cp2).lifts(alg)["z2"]
    assert special_derivation(alg, lift, res.N, NCPoly.word("x")) == res.derivations["z2"]["x"]


def test_derivation_of_central_is_central(run_100, cp2):
    res, _ = run_100
    from sklyanin.freealg import is_central
    d = Derivation(cp2.rs, res.derivations["z1"])
    assert is_central(d(cp2.z[1]), cp2.rs)
