"""One test per acceptance criterion; each prints a PASS/FAIL line in the terminal summary."""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from sklyanin.center import _MonomialEvaluator, compute_center, center_monomials, central_g, veronese_identity_check, zeta3
from sklyanin.cpoly import CPoly
from sklyanin.curve import curve_data, sample_points, sigma_order
from sklyanin.freealg import NCPoly, cached_system, hilbert_dims, normal_form
from sklyanin.linalg import nullspace
from sklyanin.params import SklyaninParams
from sklyanin.poisson import bracket_from_F, brackets_homogeneous, casimir_check, dilation_residue, jacobi_residues
from sklyanin.reps import (bundled_rep, burnside_irreducible, central_character, iso_test, profile_consistency,
                           twist, verify_relations)
from sklyanin.specialize import (check_direction, commutator_level, compare_to_dF, hbar_algebra, maximize_level,
                                 naive_section)
from sklyanin.strata import (YPoint, azumaya_test, classify_stratum, discriminant_zero_set, on_Y, partials,
                             sample_curve_points, sample_generic_points, sample_slice0_points, singular_test,
                             slice_singulars)

z1, z2, z3, g = (CPoly.var(v) for v in ("z1", "z2", "z3", "g"))
PARAMS = [SklyaninParams(1, 1, 2), SklyaninParams(1, -1, -1), SklyaninParams(1, 2, 3)]
P6 = YPoint(-1728, 0, 0, 4)
ORIGIN = YPoint(0, 0, 0, 0)


class Checks:
    def __init__(self):
        self.failed = []

    def __call__(self, ok, label):
        if not ok:
            self.failed.append(label)


@contextmanager
def criterion(num, title, limit):
    checks = Checks()
    t0 = time.perf_counter()
    err = None
    try:
        yield checks
    except Exception as exc:  # recorded, then re-raised through the assertion below
        err = f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if dt >= limit:
        checks.failed.append(f"runtime {dt:.1f}s >= {limit}s")
    if err:
        checks.failed.append(err)
    status = "PASS" if not checks.failed else "FAIL"
    detail = "" if not checks.failed else " -- " + "; ".join(checks.failed)
    ACCEPTANCE_LINES.append(f"criterion {num} {status} {title} ({dt:.1f}s){detail}")
    assert not checks.failed, detail


def test_criterion_01_hilbert_dimensions():
    with criterion(1, "Hilbert dimensions to degree 10", 30) as check:
        for p in PARAMS:
            check(hilbert_dims(p, 10) == [1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66], f"dims for {p}")


def test_criterion_02_centrality_of_g():
    with criterion(2, "g commutes with x, y, z", 10) as check:
        for p in PARAMS:
            rs = cached_system(p, 4)
            gg = central_g(p, rs)
            for w in "xyz":
                check(not normal_form(gg * NCPoly.word(w) - NCPoly.word(w) * gg, rs), f"[g,{w}] for {p}")


def test_criterion_03_sigma_order():
    with criterion(3, "sigma orders 2 and 6, both methods", 5) as check:
        check(sigma_order((1, 1, 2)) == 2, "order (1,1,2)")
        check(sigma_order((1, -1, -1)) == 6, "order (1,-1,-1)")
        for t, n in (((1, 1, 2), 2), ((1, -1, -1), 6)):
            cd = curve_data(t)
            for p in sample_points(cd, 10, random.Random(0)):
                q = p
                for _ in range(n):
                    q = cd.sigma(q)
                check(q == p, f"sigma^{n} fixes samples for {t}")
                check(cd.multiple(n, cd.translation_point) == cd.origin, f"group law order for {t}")


def test_criterion_04_center_n2():
    with criterion(4, "n=2 center presentation", 30) as check:
        cp2 = compute_center((1, 1, 2))
        rs = cp2.rs
        for i, ch in enumerate("xyz"):
            check(cp2.z[i] == normal_form(NCPoly.word(ch + ch), rs), f"z{i + 1} = {ch}^2")
        check(cp2.F == g ** 2 - (z1 ** 3 + z2 ** 3 + z3 ** 3) * 4 - z1 * z2 * z3 * 4, "F")


def test_criterion_05_center_n6():
    with criterion(5, "n=6 center relation F", 600) as check:
        cp6 = compute_center((1, -1, -1))
        ell = (z1 + z2 + z3) / 108
        F = g ** 6 + ell * g ** 4 * 3 + ell ** 2 * g ** 2 * 3 + ell ** 3 - z1 * z2 * z3 * Fraction(1331, 373248)
        check(cp6.F == F, "F")
        ev = cp6.evaluator or _MonomialEvaluator(cp6.rs, cp6.z, cp6.g)
        mons = center_monomials(6, 18)
        images = [ev(e) for e in mons]
        words = sorted(set().union(*[set(p.terms) for p in images]))
        check(all(len(w) == 18 for w in words) and len(words) <= 190, "degree-18 component")
        rows = [[p.terms.get(w, Fraction(0)) for p in images] for w in words]
        check(len(nullspace(rows, len(mons))) == 1, "kernel dimension 1")


def test_criterion_06_veronese(cp6):
    with criterion(6, "Veronese identity with printed f3", 120) as check:
        rs = cp6.rs
        zeta = zeta3()
        us = [rs.power(NCPoly.linear(v), 2) for v in cp6.basis.vectors]
        total = rs.power(cp6.g, 2)
        for u in us:
            total = total + rs.power(u, 3).scale(Fraction(1, 108))
        total = total - rs.product(*us).scale(Fraction(1, 108) * Fraction(132, 8) * zeta ** 2)
        check(not total, "g^2 + f3(u) = 0")
        for i in range(3):
            check(cp6.z[i] == rs.power(us[i], 3), f"z{i + 1} = u{i + 1}^3")
        check(veronese_identity_check(cp6), "library check")


def test_criterion_07_poisson(cp2, cp6):
    with criterion(7, "Poisson structures from F", 60) as check:
        rng = random.Random(7)
        for cp in (cp2, cp6):
            ps = bracket_from_F(cp.F)
            check(all(not r for r in jacobi_residues(ps)), f"Jacobi n={cp.n}")
            check(casimir_check(ps), f"g Casimir n={cp.n}")
            check(cp.F.is_weighted_homogeneous((cp.n, cp.n, cp.n, 3)), f"weighted homogeneity n={cp.n}")
            check(brackets_homogeneous(ps, cp.n), f"bracket degrees n={cp.n}")
            for _ in range(50):
                beta = Fraction(rng.choice([-1, 1]) * rng.randint(1, 20), rng.randint(1, 20))
                if dilation_residue(cp.F, cp.n, beta):
                    check(False, f"dilation at beta={beta}")


def test_criterion_08_specialization(cp2):
    with criterion(8, "specialization of (1,1,2) along (0,0,1)", 300) as check:
        params, direction = SklyaninParams(1, 1, 2), (0, 0, 1)
        check(check_direction(params, direction), "direction passes the genericity test")
        alg = hbar_algebra(params, direction, check=False)
        N, _ = commutator_level(alg, naive_section(cp2).lifts(alg))
        check(N != math.inf and N >= 1, f"finite level N >= 1 (got N={N})")
        res = maximize_level(cp2, alg)
        check(res.eta is not None and res.eta != 0, "eta != 0")
        check(compare_to_dF(res.brackets, bracket_from_F(cp2.F)) == res.eta, "brackets = eta * dF")


def test_criterion_09_singular_locus(cp2, cp6):
    with criterion(9, "singular locus", 60) as check:
        rng = random.Random(9)
        for i in range(3):
            for p in sample_curve_points(cp6, i, 20, rng):
                check(on_Y(cp6, p) and not any(partials(cp6, p)), f"C{i + 1} point {p}")
        for p in sample_generic_points(cp6, 20, rng):
            check(on_Y(cp6, p) and any(partials(cp6, p)), f"smooth point {p}")
        s = slice_singulars(cp6, 4)
        check(len(s) == 3 and P6 in s, "slice gamma=4")
        for gam in (1, -2, Fraction(1, 3)):
            check(slice_singulars(cp2, gam) == set(), f"n=2 slice gamma={gam}")


def test_criterion_10_strata(cp2, cp6):
    with criterion(10, "strata and Azumaya locus", 60) as check:
        check(classify_stratum(cp2, ORIGIN).tag == "Y4", "origin n=2")
        check(classify_stratum(cp6, ORIGIN).tag == "Y4", "origin n=6")
        check(classify_stratum(cp6, P6).tag == "Y2", "(-1728,0,0,4)")
        check(classify_stratum(cp2, (1, -1, 0, 0)).tag == "Y3", "(1,-1,0,0)")
        rng = random.Random(10)
        pts = [(cp2, p) for p in sample_generic_points(cp2, 25, rng) + sample_slice0_points(cp2, 15, rng)]
        pts += [(cp6, p) for p in sample_generic_points(cp6, 25, rng) + sample_slice0_points(cp6, 15, rng)]
        pts += [(cp6, p) for i in range(3) for p in sample_curve_points(cp6, i, 6, rng)]
        pts += [(cp2, ORIGIN), (cp6, ORIGIN)]
        check(len(pts) == 100, "100 sample points")
        for cp, p in pts:
            tag = classify_stratum(cp, p).tag
            check(azumaya_test(cp, p) == (tag in ("Y1", "Y3")), f"azumaya at {p}")
            check(classify_stratum(cp, p.rotate()).tag == tag, f"rotation at {p}")
            beta = Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice([-1, 1])
            check(classify_stratum(cp, p.dilate(beta, cp.n)).tag == tag, f"dilation at {p}")


def test_criterion_11_representations(cp6):
    with criterion(11, "bundled 2-dimensional representations", 30) as check:
        rep, params = bundled_rep()
        check(verify_relations(rep, params)[0], "relations")
        char = central_character(rep, cp6)
        check(char == P6, f"central character {char} == {P6}")
        check(burnside_irreducible(rep) == (True, 4), "irreducible, span dimension 4")
        zeta = zeta3()
        reps = [rep, twist(rep, zeta), twist(rep, zeta ** 2)]
        for i in range(3):
            for j in range(i + 1, 3):
                check(not iso_test(reps[i], reps[j]), f"twists {i},{j} non-isomorphic")
        check(len({central_character(r, cp6) for r in reps}) == 1, "equal characters")
        check(profile_consistency(reps, cp6), "profile {2,2,2}, sum of squares 12")


def test_criterion_12_discriminants(cp2, cp6):
    with criterion(12, "discriminant zero sets", 1) as check:
        for k, kind in {1: "empty", 2: "origin", 4: "origin"}.items():
            check(discriminant_zero_set(cp2, k).kind == kind, f"n=2 k={k}")
        for k, kind in {1: "empty", 2: "origin", 12: "origin", 13: "curves", 36: "curves"}.items():
            check(discriminant_zero_set(cp6, k).kind == kind, f"n=6 k={k}")
