import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gerstenhaber.scalars import (
    FieldError, FieldSpec, cyclotomic, cyclotomic_polynomial, field_arith,
    omega_binomial, omega_integer, prime_field,
)

ORDERS = [2, 3, 4, 5, 6, 8]


def to_complex(F, a):
    z = cmath.exp(2j * cmath.pi / F.n)
    return sum(float(c) * z ** k for k, c in enumerate(F.coefficients(a)))


def coeffs(n):
    d = len(cyclotomic_polynomial(n)) - 1
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=d, max_size=d)


@pytest.mark.parametrize("n,expected", [(1, [-1, 1]), (2, [1, 1]), (4, [1, 0, 1]), (6, [1, -1, 1]),
                                        (5, [1, 1, 1, 1, 1])])
def test_cyclotomic_polynomial(n, expected):
    assert cyclotomic_polynomial(n) == expected


@pytest.mark.parametrize("n", ORDERS)
def test_omega_has_exact_order(n):
    F = cyclotomic(n)
    w = F.omega
    assert F.pow(w, n) == F.one
    assert all(F.pow(w, k) != F.one for k in range(1, n))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORDERS), st.data())
def test_cyclotomic_arithmetic_matches_complex_evaluation(n, data):
    F = cyclotomic(n)
    a = F.from_coefficients(data.draw(coeffs(n)))
    b = F.from_coefficients(data.draw(coeffs(n)))
    za, zb = to_complex(F, a), to_complex(F, b)
    assert abs(to_complex(F, F.add(a, b)) - (za + zb)) < 1e-9
    assert abs(to_complex(F, F.mul(a, b)) - za * zb) < 1e-9
    if not F.is_zero(b):
        assert abs(to_complex(F, F.div(a, b)) - za / zb) < 1e-6 * (1 + abs(za / zb))
        assert F.mul(b, F.inv(b)) == F.one


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(7, 3), (7, 6), (13, 4), (5, 2), (11, 5)]), st.integers(0, 200), st.integers(1, 200))
def test_prime_field_matches_modular_integers(pn, a, b):
    p, n = pn
    F = prime_field(p, n)
    x, y = F.from_int(a), F.from_int(b)
    assert F.mul(x, y) == F.from_int(a * b)
    assert F.add(x, y) == F.from_int(a + b)
    if b % p:
        assert F.mul(F.inv(y), y) == F.one
        assert F.inv(y) == F.from_int(pow(b, -1, p))
    w = F.omega
    assert F.pow(w, n) == F.one and all(F.pow(w, k) != F.one for k in range(1, n))


def test_prime_field_rejects_bad_roots():
    with pytest.raises(FieldError):
        prime_field(7, 5)
    with pytest.raises(FieldError):
        prime_field(6, 1)


def test_field_mismatch():
    with pytest.raises(FieldError):
        field_arith(cyclotomic(3)(1), cyclotomic(4)(1), "add")
    assert cyclotomic(3)("w") != cyclotomic(4)("w")


@pytest.mark.parametrize("F", [cyclotomic(3), cyclotomic(4), cyclotomic(5)])
def test_parse_format_roundtrip(F):
    for text in ["0", "1", "w", "-3/2", "1 + 2*w - w^2", "w^3 - 1/3"]:
        x = F.parse(text)
        assert F.parse(str(x)) == x


@pytest.mark.parametrize("F", [prime_field(7, 3), prime_field(13, 4)])
def test_prime_parse_format_roundtrip(F):
    for text in ["0", "1", "5", "-3", f"{F.p}:4"]:
        x = F.parse(text)
        assert F.parse(str(x)) == x
    with pytest.raises(FieldError):
        F.parse("2:1")


def test_parse_reduces():
    F = cyclotomic(3)
    assert F.parse("1 + 2*w - w^2") == F.parse("2 + 3*w")
    assert str(F("w")) == "w"
    assert prime_field(7, 3).omega == 2


def test_field_json_roundtrip():
    for F in [cyclotomic(5), prime_field(7, 3), prime_field(13, 4, 5)]:
        assert FieldSpec.from_json(F.to_json()) == F


def test_omega_integers_frozen():
    F = cyclotomic(3)
    assert omega_integer(0, F) == 0
    assert omega_integer(1, F) == 1
    assert omega_integer(2, F) == F("1 + w")
    assert omega_integer(3, F) == 0


def test_omega_binomials_frozen():
    F3 = cyclotomic(3)
    assert omega_binomial(2, 1, F3) == F3("1 + w")
    F4 = cyclotomic(4)
    assert [omega_binomial(3, c, F4) for c in range(4)] == [F4(1), F4("w"), F4("w"), F4(1)]
    # binom(n, c)_w vanishes for 0 < c < n
    for n in (3, 4, 5):
        F = cyclotomic(n)
        assert all(omega_binomial(n, c, F) == 0 for c in range(1, n))


def quotient_binomial(F, b, c, w=None):
    num, den = F(1), F(1)
    for k in range(c):
        num = num * omega_integer(b - k, F, w)
        den = den * omega_integer(k + 1, F, w)
    return num / den


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(ORDERS + [7, 9]), st.integers(0, 12), st.integers(0, 12))
def test_binomial_recurrence_equals_quotient(n, b, c):
    F = cyclotomic(n)
    c = min(b, c)
    # quotient formula valid when (k)_w != 0 for k <= c
    if any(omega_integer(k, F) == 0 for k in range(1, c + 1)):
        return
    assert omega_binomial(b, c, F) == quotient_binomial(F, b, c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10))
def test_binomial_symmetry_and_pascal(b, c):
    F = cyclotomic(5)
    c = min(b, c)
    assert omega_binomial(b, c, F) == omega_binomial(b, b - c, F)
    if 0 < c < b:
        w = F("w")
        assert omega_binomial(b, c, F) == omega_binomial(b - 1, c, F) + w ** (b - c) * omega_binomial(b - 1, c - 1, F)


def test_binomial_domain():
    F = cyclotomic(3)
    with pytest.raises(ValueError):
        omega_binomial(2, 3, F)
    with pytest.raises(ValueError):
        omega_integer(-1, F)


def test_scalar_operators():
    F = cyclotomic(3)
    w = F("w")
    assert w ** 3 == 1
    assert 1 + w + w ** 2 == 0
    assert (w / w) == 1 and Fraction(1, 2) * F(2) == 1
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)
