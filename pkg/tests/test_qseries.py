from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgmirror.qseries import (
    EtaQuotientSpec,
    QSeries,
    add,
    compositional_inverse,
    eta_quotient,
    invert,
    jacobi_cube,
    mul,
    nth_root,
    substitute_power,
)

PREC = 12


@st.composite
def series(draw, precision=PREC, min_exp=0, unit=False):
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=0, max_size=precision - min_exp))
    terms = {min_exp + k: c for k, c in enumerate(coeffs)}
    if unit:
        terms[min_exp] = draw(st.sampled_from([1, -1, 2, Fraction(1, 3)]))
    return QSeries(terms, precision)


def test_stored_coefficients_never_zero():
    s = QSeries({0: 1, 1: 0, 2: 3}, 10)
    assert 1 not in s.exponents()
    assert QSeries([(0, 1), (0, -1)], 5).is_zero()


def test_exponents_below_precision():
    s = QSeries({0: 1, 9: 2, 10: 5}, 10)
    assert max(s.exponents()) < s.precision


def test_add_cancellation():
    a = QSeries({0: 1, 1: -1}, 10)
    b = QSeries({1: 1}, 10)
    assert add(a, b) == QSeries({0: 1}, 10)


def test_add_phi_terms():
    s = QSeries({9: -1}, 100) + QSeries({81: 3}, 100)
    assert dict(s.items()) == {9: -1, 81: 3}
    assert s.precision == 100


def test_add_precision_is_min():
    s = QSeries({1: 1}, 5) + QSeries({2: 1}, 3)
    assert s.precision == 3


def test_mul_telescoping():
    geo = QSeries({k: 1 for k in range(5)}, 5)
    assert mul(QSeries({0: 1, 1: -1}), geo) == QSeries({0: 1}, 5)


def test_mul_area_bookkeeping():
    q2 = QSeries.monomial(1, 2)
    assert (q2 * q2) == QSeries.monomial(1, 4)


def test_mul_leading_ratio():
    psi = QSeries({1: -1}, 30)
    phi = QSeries({9: -1}, 30)
    assert (psi * invert(phi)).leading_term() == (-8, 1)


def test_invert_one():
    assert invert(QSeries.constant(1)) == QSeries.constant(1)


def test_invert_phi():
    phi = QSeries({9: -1, 81: 3}, 200)
    inv = invert(phi)
    assert inv.valuation() == -9
    assert inv.coeff(-9) == -1
    # the first correction sits at 81 - 2*9 = 63
    assert inv.coeff(63) == -3
    assert all(inv.coeff(e) == 0 for e in range(-8, 63))
    prod = phi * inv
    assert prod == QSeries.constant(1, prod.precision)


def test_invert_zero_raises():
    with pytest.raises(ZeroDivisionError):
        invert(QSeries.zero(10))


def test_nth_root_examples():
    assert nth_root(QSeries.constant(1), 3) == QSeries.constant(1)
    assert nth_root(QSeries.monomial(1, 9), 3) == QSeries.monomial(1, 3)
    r = nth_root(QSeries({0: 1, 1: -3}, 6), 3)
    assert [r.coeff(k) for k in range(4)] == [1, -1, -1, Fraction(-5, 3)]
    assert r**3 == QSeries({0: 1, 1: -3}, 6)


def test_nth_root_rejects_bad_valuation():
    with pytest.raises(ValueError):
        nth_root(QSeries({1: 1}, 5), 3)


def test_eta_quotient_cube():
    s = eta_quotient(EtaQuotientSpec([(1, 3)]), 11)
    assert s == QSeries({0: 1, 1: -3, 3: 5, 6: -7, 10: 9}, 11)


def test_eta_quotient_empty_product():
    assert eta_quotient(EtaQuotientSpec([(1, 0)]), 7) == QSeries.constant(1, 7)


def test_eta_quotient_with_prefactor():
    s = eta_quotient(EtaQuotientSpec([(8, 3), (72, -3)], prefactor=-8), 20)
    assert s.valuation() == -8
    assert [s.coeff(e) for e in (-8, 0, 8, 16)] == [1, -3, 0, 5]


def test_jacobi_cube_small_orders():
    assert jacobi_cube(2) == QSeries({0: 1, 1: -3}, 2)
    assert jacobi_cube(1) == QSeries.constant(1, 1)
    assert jacobi_cube(60) == eta_quotient(EtaQuotientSpec([(1, 3)]), 60)


def test_substitute_power():
    assert substitute_power(QSeries({1: 1}, 10), 8) == QSeries({8: 1}, 80)
    s = QSeries({1: -1, 25: -5}, 30)
    assert substitute_power(s, 1) == s


def test_compositional_inverse_examples():
    q = QSeries({1: 1}, 10)
    assert compositional_inverse(q) == q
    inv = compositional_inverse(QSeries({1: 1, 2: 1}, 8))
    assert [inv.coeff(k) for k in range(1, 5)] == [1, -1, 2, -5]


def test_serialization_round_trip():
    s = QSeries({Fraction(1, 2): 3, 4: Fraction(-2, 7)}, Fraction(9, 2))
    assert QSeries.from_dict(s.to_dict()) == s


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(series(unit=True))
def test_inverse_property(a):
    prod = a * a.invert()
    assert prod == QSeries.constant(1, prod.precision)


@settings(max_examples=40, deadline=None)
@given(series(unit=True), st.integers(2, 4))
def test_root_property(a, n):
    a = a.truncate(PREC)
    if a.leading_term()[1] < 0 and n % 2 == 0:
        return
    c = a.leading_term()[1]
    if c not in (1, -1):
        a = a.scale(1 / c)
    r = a.nth_root(n)
    assert r**n == a.truncate(r.precision)


@settings(max_examples=40, deadline=None)
@given(series(min_exp=1, unit=True))
def test_compositional_inverse_property(a):
    inv = a.compositional_inverse("t")
    back = a.with_variable("t").compose(inv)
    t = QSeries({1: 1}, back.precision, "t")
    assert back == t
