import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sklyanin.center import central_g
from sklyanin.errors import CapExceeded, ForbiddenParameters
from sklyanin.freealg import (NCPoly, build_rewrite_system, cached_system, hilbert_dims, is_central, normal_form,
                              reduce_with_rules, relations)
from sklyanin.params import SklyaninParams, forbidden_reason

P112 = SklyaninParams(1, 1, 2)
P1mm = SklyaninParams(1, -1, -1)
P123 = SklyaninParams(1, 2, 3)
DIMS = [1, 3, 6, 10, 15, 21, 28, 36, 45]

words = st.text(alphabet="xyz", min_size=0, max_size=4)


def W(w):
    return NCPoly.word(w)


@pytest.mark.parametrize("triple, clause", [
    ((1, 0, 0), "coordinate"),
    ((1, 1, 1), "a^3 = b^3 = c^3"),
    ((0, 1, 2), "abc = 0"),
])
def test_forbidden_parameters(triple, clause):
    assert clause in forbidden_reason(*triple)
    with pytest.raises(ForbiddenParameters):
        SklyaninParams(*triple)


def test_forbidden_hesse_condition():
    # (3abc)^3 = (a^3+b^3+c^3)^3 holds for a = b = 1, c = -2
    assert forbidden_reason(1, 1, -2) is not None


def test_quadratic_rules_at_cap_two():
    rs = build_rewrite_system(P112, 2)
    assert len(rs.rules) == 3
    assert all(len(w) == 2 for w, _ in rs.rules)


@pytest.mark.parametrize("params", [P112, P1mm])
def test_normal_word_counts(params):
    assert hilbert_dims(params, 8) == DIMS


def test_small_hilbert_dims():
    assert hilbert_dims(P112, 3) == [1, 3, 6, 10]
    assert hilbert_dims(P123, 6) == DIMS[:7]
    assert hilbert_dims(SklyaninParams(2, 3, 5), 0) == [1]


@pytest.mark.parametrize("params", [P112, P1mm, P123])
def test_relations_reduce_to_zero(params):
    rs = cached_system(params, 4)
    for r in relations(params):
        assert not normal_form(r, rs)
    assert not normal_form(NCPoly(), rs)


def test_g_central_and_x_not():
    rs = cached_system(P112, 7)
    g = central_g(P112, rs)
    assert is_central(g, rs)
    assert is_central(rs.mul(g, g), rs)
    ok, gen, comm = is_central(W("x"), rs)
    assert not ok and comm


def test_g_central_for_123():
    rs = cached_system(P123, 4)
    assert is_central(central_g(P123, rs), rs)


def test_cap_exceeded():
    rs = build_rewrite_system(P112, 3)
    with pytest.raises(CapExceeded):
        normal_form(W("xyzx"), rs)


@given(words, words)
@settings(max_examples=60, deadline=None)
def test_normal_form_multiplicative(u, v):
    rs = cached_system(P1mm, 8)
    assert normal_form(W(u) * W(v), rs) == rs.mul(normal_form(W(u), rs), normal_form(W(v), rs))


@given(words)
@settings(max_examples=40, deadline=None)
def test_normal_form_idempotent(u):
    rs = cached_system(P112, 4)
    p = normal_form(W(u) * Fraction(3, 2) + W(u[::-1]), rs)
    assert normal_form(p, rs) == p


def test_rule_reduction_oracle_agrees():
    rs = cached_system(P123, 7)
    rng = random.Random(7)
    for _ in range(15):
        w = "".join(rng.choice("xyz") for _ in range(7))
        nf = normal_form(W(w), rs)
        assert reduce_with_rules(W(w), rs.rules, "leftmost") == nf
        assert reduce_with_rules(W(w), rs.rules, "rightmost") == nf
