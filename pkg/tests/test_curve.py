import random

import pytest
from hypothesis import given, settings, strategies as st

from sklyanin.curve import ORIGIN, ProjPoint, curve_data, group_add, flex_points, sample_points, sigma_apply, sigma_order
from sklyanin.errors import NotOnCurve
from sklyanin.params import SklyaninParams

CURVES = {t: curve_data(SklyaninParams(*t)) for t in [(1, 1, 2), (1, -1, -1), (1, 2, 3), (2, 3, 5)]}
POINTS = {t: sample_points(cd, 30, random.Random(1)) for t, cd in CURVES.items()}

param_keys = st.sampled_from(sorted(CURVES))


def test_flexes_lie_on_every_curve():
    for cd in CURVES.values():
        assert all(cd.on_curve(p) for p in flex_points())
        assert cd.on_curve(ORIGIN)


def test_sigma_of_origin_is_translation_point():
    for t, cd in CURVES.items():
        assert sigma_apply(cd, ORIGIN) == ProjPoint(*t)


def test_sigma_base_point_fallback():
    cd = CURVES[(1, 1, 2)]
    assert sigma_apply(cd, ProjPoint(1, 1, 2)) == ProjPoint(1, -1, 0)


def test_translation_point_has_order_two_for_112():
    cd = CURVES[(1, 1, 2)]
    t = cd.translation_point
    assert cd.add(t, t) == ORIGIN


def test_sigma_orders():
    assert sigma_order((1, 1, 2)) == 2
    assert sigma_order((1, -1, -1)) == 6


def test_sigma_order_infinite_within_cap():
    # both methods agree that no order up to the cap exists
    assert sigma_order((1, 2, 3), cap=12) is None


def test_family_11c_has_order_two():
    for c in (3, 5, -7):
        assert sigma_order((1, 1, c)) == 2


def test_off_curve_rejected():
    cd = CURVES[(1, 2, 3)]
    with pytest.raises(NotOnCurve):
        group_add(cd, ProjPoint(1, 1, 1), ORIGIN)


def test_parse_round_trip():
    p = ProjPoint.parse("[2:-4:6]")
    assert p == ProjPoint(1, -2, 3)
    assert ProjPoint.parse(str(p)) == p


@given(param_keys, st.integers(0, 29))
@settings(max_examples=60, deadline=None)
def test_sigma_preserves_curve(t, i):
    cd = CURVES[t]
    assert cd.on_curve(sigma_apply(cd, POINTS[t][i]))


@given(param_keys, st.integers(0, 29))
@settings(max_examples=60, deadline=None)
def test_identity_and_inverse(t, i):
    cd, p = CURVES[t], POINTS[t][i]
    assert cd.add(p, ORIGIN) == p
    assert cd.add(p, cd.negate(p)) == ORIGIN


@given(param_keys, st.integers(0, 29), st.integers(0, 29), st.integers(0, 29))
@settings(max_examples=40, deadline=None)
def test_group_law_associative_commutative(t, i, j, k):
    cd = CURVES[t]
    p, q, r = POINTS[t][i], POINTS[t][j], POINTS[t][k]
    assert cd.add(p, q) == cd.add(q, p)
    assert cd.add(cd.add(p, q), r) == cd.add(p, cd.add(q, r))


@given(param_keys, st.integers(0, 29))
@settings(max_examples=40, deadline=None)
def test_sigma_is_translation(t, i):
    cd, p = CURVES[t], POINTS[t][i]
    assert sigma_apply(cd, p) == cd.add(p, cd.translation_point)
