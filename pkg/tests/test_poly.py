from fractions import Fraction

import oracle
import pytest
import sympy
from conftest import CUBIC, P
from hypothesis import given
from hypothesis import strategies as st

from otlck.exactnum import RationalPolynomial, composed_product, count_real_roots, gcd, resultant, squarefree_part
from otlck.exactnum.poly import (
    descartes_count,
    from_power_sums,
    is_squarefree,
    power_sums,
    sturm_count,
    sturm_sequence,
    symmetric_square_product,
)

small_ints = st.integers(-6, 6)


def int_polys(min_deg=0, max_deg=5):
    return st.lists(small_ints, min_size=min_deg + 1, max_size=max_deg + 1).map(RationalPolynomial)


def monic_polys(min_deg=1, max_deg=4):
    return st.lists(small_ints, min_size=min_deg, max_size=max_deg).map(lambda cs: RationalPolynomial(cs + [1]))


def test_normalisation_trims_trailing_zeros():
    p = P([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert P([0, 0]).degree == -1


def test_json_roundtrip_keeps_exact_rationals():
    p = P([Fraction(1, 3), Fraction(-5, 4), 7])
    assert p.to_json() == ["1/3", "-1.25", "7"]
    assert RationalPolynomial.from_json(p.to_json()) == p


@given(int_polys(), int_polys())
def test_ring_identities(f, g):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * g == f * g + g * g
    assert f - f == P([])


@given(int_polys(), int_polys(min_deg=1))
def test_division_with_remainder(f, g):
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@given(int_polys(max_deg=4), int_polys(max_deg=4))
def test_gcd_matches_sympy(f, g):
    if f.is_zero() and g.is_zero():
        return
    ours = gcd(f, g)
    ref = sympy.gcd(oracle.sym_poly(f.coeffs), oracle.sym_poly(g.coeffs))
    ref = oracle.coeffs_of(ref.monic()) if not ref.is_zero else []
    assert list(ours.monic().coeffs) == [Fraction(int(c.p), int(c.q)) for c in ref]


@given(int_polys(min_deg=1, max_deg=4), int_polys(min_deg=1, max_deg=4))
def test_resultant_matches_sympy(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == oracle.sym_resultant(f.coeffs, g.coeffs)


def test_squarefree_part_of_square():
    f = P([-2, 0, 1])
    assert squarefree_part(f * f) == f
    assert is_squarefree(f)
    assert not is_squarefree(f * f)
    # x^4 - 4 = (x^2 - 2)(x^2 + 2) is already squarefree
    assert squarefree_part(P([-4, 0, 0, 0, 1])) == P([-4, 0, 0, 0, 1])


@given(monic_polys(max_deg=4))
def test_power_sums_roundtrip(f):
    ps = power_sums(f, f.degree)
    assert from_power_sums(ps, f.degree) == f


def test_composed_product_small_cases():
    assert composed_product(P([-2, 1]), P([-2, 1])) == P([-4, 1])
    h = composed_product(P([-2, 0, 1]), P([-3, 0, 1]))
    assert h == P([36, 0, -12, 0, 1])
    assert (P([-6, 0, 1]) ** 2 % h).is_zero()


@given(monic_polys(max_deg=3), monic_polys(max_deg=3))
def test_composed_product_matches_resultant_oracle(f, g):
    ours = composed_product(f, g)
    ref = oracle.coeffs_of(oracle.sym_composed_product(f.coeffs, g.coeffs))
    assert list(ours.coeffs) == [Fraction(int(c.p), int(c.q)) for c in ref]


def test_composed_product_cubic_contains_modulus():
    f = P(CUBIC)
    h = composed_product(f, f)
    assert h.degree == 9
    rs = oracle.roots(tuple(CUBIC))
    r = next(z for z in rs if abs(oracle._ctx.im(z)) < 1e-50)
    z = next(z for z in rs if oracle._ctx.im(z) > 0)
    for target in (r * r, r * z, abs(z) ** 2):
        val = sum(oracle._ctx.mpf(int(c)) * target**k for k, c in enumerate(h.coeffs))
        assert abs(val) < oracle._ctx.mpf(10) ** -40


def test_symmetric_square_has_same_squarefree_part():
    for cs in ([-1, -1, 0, 1], [-1, -1, 0, 0, 1], [1, 0, 1]):
        f = P(cs)
        sym = symmetric_square_product(f)
        assert sym.degree == f.degree * (f.degree + 1) // 2
        assert squarefree_part(sym).monic() == squarefree_part(composed_product(f, f)).monic()


@pytest.mark.parametrize("cs,count", [([1, 0, 1], 0), ([-2, 0, 1], 2), (CUBIC, 1), ([-1, -1, 0, 0, 0, 1], 1)])
def test_count_real_roots_examples(cs, count):
    assert count_real_roots(P(cs)) == count
    assert oracle.signature(cs)[0] == count


@given(monic_polys(min_deg=1, max_deg=5))
def test_count_real_roots_matches_oracle(f):
    f = squarefree_part(f)
    if f.degree < 1:
        return
    assert count_real_roots(f) == oracle.signature(f.integer_coeffs())[0]


def test_sturm_count_on_interval():
    seq = sturm_sequence(P([-2, 0, 1]))
    assert sturm_count(seq, Fraction(0), Fraction(2)) == 1
    assert sturm_count(seq, Fraction(-2), Fraction(2)) == 2
    assert sturm_count(seq) == 2


def test_descartes_count_isolates():
    f = P([-2, 0, 1])
    assert descartes_count(f, Fraction(1), Fraction(2)) == 1
    assert descartes_count(f, Fraction(2), Fraction(3)) == 0
