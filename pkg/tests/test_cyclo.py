from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuscat.cyclo import (I, ONE, SQRT2, ZERO, Cyc, CycError, classify_value, conj, cyclotomic_poly, format_cyc,
                          parse_cyc, root_exponent, root_of_unity, root_order, sqrt_rational, sqrt_root_of_unity, zeta)

CONDUCTORS = [1, 2, 3, 4, 5, 8, 12, 16]


@st.composite
def cycs(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    den = draw(st.integers(1, 6))
    return Cyc(n, [Fraction(c, den) for c in coeffs])


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_known_identities():
    assert I * I == -1
    assert SQRT2 * SQRT2 == 2
    assert zeta(8) + zeta(8, 7) == SQRT2
    assert sum((root_of_unity(5, k) for k in range(5)), ZERO) == 0
    assert zeta(3) + zeta(3, 2) == -1
    assert sqrt_rational(Fraction(1, 2)) == SQRT2 / 2
    assert zeta(16) ** 16 == 1 and zeta(16) ** 8 == -1


def test_equality_across_conductors():
    assert root_of_unity(8, 2) == I
    assert root_of_unity(16, 4) == I
    assert hash(root_of_unity(16, 4)) == hash(I)
    assert Cyc.rational(3) == 3


def test_root_detection():
    assert root_order(zeta(16, 3)) == 16
    assert root_order(SQRT2) is None
    assert root_exponent(I, 16) == 4
    assert root_exponent(-ONE, 4) == 2
    info = classify_value(zeta(8))
    assert info["root_order"] == 8 and not info["is_real"]


def test_sqrt_of_root_of_unity_is_principal():
    assert sqrt_root_of_unity(I) == zeta(8)
    assert sqrt_root_of_unity(-ONE) == I
    assert sqrt_root_of_unity(zeta(8, 7)) == zeta(16, 15)


def test_conjugation_and_galois():
    assert conj(zeta(16, 3)) == zeta(16, 13)
    assert SQRT2.galois(3) == -SQRT2
    assert (zeta(16) * conj(zeta(16))) == 1


def test_division_by_zero():
    with pytest.raises((CycError, ZeroDivisionError)):
        ONE / ZERO


@pytest.mark.parametrize("text", ["z16^5", "-1/2", "sqrt2/2", "-i", "1 + 2*i", "z8^3", "0"])
def test_format_parse_round_trip(text):
    v = parse_cyc(text)
    assert parse_cyc(format_cyc(v)) == v


def test_json_accepts_noncanonical_input():
    v = Cyc.from_json({"conductor": 4, "coeffs": [[1, 1], [2, 1], [0, 1], [0, 1]]})
    assert v == 1 + 2 * I
    again = Cyc.from_json(v.to_json())
    assert again == v and again.to_json() == v.to_json()


@settings(max_examples=300, deadline=None)
@given(cycs(), cycs(), cycs())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a != 0:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=200, deadline=None)
@given(cycs(), cycs())
def test_numeric_shadow(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-8
    assert abs(complex(conj(a)) - complex(a).conjugate()) < 1e-8
