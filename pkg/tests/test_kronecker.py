from fractions import Fraction

import oracle
import pytest
from conftest import CUBIC, QUINTIC, SEXTIC, P
from hypothesis import given
from hypothesis import strategies as st

from otlck.exactnum import RealAlgebraic, alg_equal, refine
from otlck.kronecker import (
    UnitKind,
    case1_divisibility,
    classify_unit,
    complex_modulus_squared,
    equal_complex_moduli,
    is_gxk_form,
)
from otlck.numfield import make_field
from otlck.search import SearchBudget, enumerate_units

_quintic = make_field(P(QUINTIC))
QUINTIC_UNITS = enumerate_units(_quintic, SearchBudget(1)).units


def test_equal_moduli_examples(quintic):
    th = quintic.theta
    assert equal_complex_moduli(th, 1, 1)
    assert not equal_complex_moduli(th, 1, 2)
    assert not equal_complex_moduli(th, 2, 1)
    m = quintic.from_int(-1)
    assert equal_complex_moduli(m, 1, 2)
    with pytest.raises(IndexError):
        equal_complex_moduli(th, 1, 3)


def test_no_complex_embeddings(sqrt2):
    with pytest.raises(ValueError, match="t = 0"):
        classify_unit(sqrt2.theta)


def test_cubic_theta_is_homothetical(cubic):
    c = classify_unit(cubic.theta)
    assert c.kind is UnitKind.HOMOTHETICAL and c.is_kronecker
    r = oracle.embeddings(CUBIC)[0]
    fine = refine(c.modulus_squared, Fraction(1, 2**100))
    assert abs(oracle._ctx.mpf(fine.lo.numerator) / fine.lo.denominator - 1 / r) < oracle._ctx.mpf(2) ** -90
    assert abs(float(fine.lo) - 0.75488) < 1e-5


def test_minus_one_is_isometrical(cubic, quintic, sextic):
    for K in (cubic, quintic, sextic):
        c = classify_unit(K.from_int(-1))
        assert c.kind is UnitKind.ISOMETRICAL
        assert alg_equal(c.modulus_squared, RealAlgebraic.from_rational(1))


def test_quintic_theta_witness(quintic):
    c = classify_unit(quintic.theta)
    assert c.kind is UnitKind.NONKRONECKER and c.witness == (1, 2)
    a, b = c.witness_intervals
    assert not a.intersects(b)
    ref = oracle.complex_moduli_sq(QUINTIC, quintic.theta.coords)
    assert _in(a, ref[0]) and _in(b, ref[1])
    js = c.to_json()
    assert js["witness"] == [1, 2] and len(js["witness_intervals"]) == 2


def _in(iv, x):
    ctx = oracle._ctx
    return ctx.mpf(iv.lo.numerator) / iv.lo.denominator <= x <= ctx.mpf(iv.hi.numerator) / iv.hi.denominator


def test_sextic_subfield_unit_is_homothetical(sextic):
    # theta^2 is a root of y^3 - y - 1, so its two complex moduli coincide
    c = classify_unit(sextic.theta**2)
    assert c.kind is UnitKind.HOMOTHETICAL
    c = classify_unit(sextic.theta)
    assert c.kind is UnitKind.HOMOTHETICAL


def test_complex_modulus_matches_oracle(sextic):
    u = sextic.theta
    ref = oracle.complex_moduli_sq(SEXTIC, u.coords)
    for j in (1, 2):
        m = refine(complex_modulus_squared(u, j), Fraction(1, 2**80))
        assert _in(m.interval, ref[j - 1])


@given(st.sampled_from(QUINTIC_UNITS))
def test_classifier_agrees_with_oracle(u):
    ref = oracle.complex_moduli_sq(QUINTIC, u.coords)
    c = classify_unit(u)
    if oracle.gap_exceeds(ref[0], ref[1]):
        assert c.kind is UnitKind.NONKRONECKER
    else:
        assert c.is_kronecker


def test_gxk_form():
    assert is_gxk_form(P([1, 0, 0, 1, 0, 0, 1]), 3)
    assert not is_gxk_form(P(CUBIC), 3)
    assert is_gxk_form(P(CUBIC), 1)
    assert is_gxk_form(P(SEXTIC), 2)
    with pytest.raises(ValueError):
        is_gxk_form(P(CUBIC), 0)


def test_case1_divisibility():
    assert case1_divisibility(1, 1)
    assert not case1_divisibility(2, 3)
    assert not any(case1_divisibility(s, t) for t in range(3, 51) for s in range(2, t))


@given(st.integers(1, 200), st.integers(1, 200))
def test_case1_only_when_s_is_one(s, t):
    # s + 2t = k (2t + 1) forces k = 1 once s <= 2t, i.e. s = 1
    if s <= 2 * t:
        assert case1_divisibility(s, t) == (s == 1)


_sextic = make_field(P(SEXTIC))
SEXTIC_UNITS = enumerate_units(_sextic, SearchBudget(1)).units


@given(st.sampled_from(SEXTIC_UNITS + QUINTIC_UNITS))
def test_classification_ignores_complex_ordering(u):
    t = u.field.t
    pairs = {(i, j): equal_complex_moduli(u, i, j) for i in range(1, t + 1) for j in range(1, t + 1)}
    assert all(pairs[i, j] == pairs[j, i] for i, j in pairs)
    # "all moduli equal" read off any ordering agrees with the classifier
    for perm in ([1, 2], [2, 1]):
        all_equal = all(pairs[perm[0], j] for j in perm)
        assert all_equal == classify_unit(u).is_kronecker
