from fractions import Fraction

import pytest

from wbinom.coeffs import (ONE, ZERO, SymPoly, a, poly_substitute, q_sym, residual_magnitude,
                           v, v_ind, w, w_ind)
from wbinom.errors import MissingAssignment


def test_additive_identity():
    p = 1 + w(1, 1) * w(2, 1)
    assert ZERO + p == p
    assert p + 0 == p


def test_like_terms_collect():
    assert w(1, 1) + w(1, 1) == 2 * w(1, 1)


def test_cancellation_drops_term():
    p = (1 + w(1, 1)) + (-w(1, 1))
    assert p == 1
    assert len(p) == 1


def test_distinct_factors_multiply():
    p = w(1, 1) * w(1, 2)
    assert p == SymPoly.monomial(((w_ind(1, 1), 1), (w_ind(1, 2), 1)))


def test_exponents_add():
    assert w(1, 1) * w(1, 1) == SymPoly.var(w_ind(1, 1), 2)


def test_square_of_binomial():
    x = w(1, 1)
    assert (1 + x) * (1 + x) == 1 + 2 * x + x * x


def test_commutative_and_distributive():
    p, q, r = 1 + w(1, 1), v(0, 1) - 3 * w(2, 1), a(2) + Fraction(1, 2)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)


def test_laurent_inverse_of_monomial():
    x = a(1) / a(0)
    assert x * a(0) == a(1)
    with pytest.raises(ZeroDivisionError):
        (1 + a(0)).inverse()
    assert (7 * a(0)).inverse() == Fraction(1, 7) / a(0)


def test_substitute_examples():
    assert poly_substitute(1 + w(1, 1), {w_ind(1, 1): 0.5}) == pytest.approx(1.5)
    assert poly_substitute(ZERO, {}) == 0
    assert poly_substitute(w(1, 1) * w(1, 2), {w_ind(1, 1): 2, w_ind(1, 2): 3}) == pytest.approx(6)


def test_substitute_missing_value():
    with pytest.raises(MissingAssignment):
        poly_substitute(w(1, 1) + v(0, 1), {w_ind(1, 1): 1.0})


def test_substitute_negative_exponent():
    p = a(1) * a(0) ** -1
    from wbinom.coeffs import a_ind
    assert poly_substitute(p, {a_ind(1): 6.0, a_ind(0): 2.0}) == pytest.approx(3.0)


def test_text_round_trip():
    p = 3 * w(1, 1) * w(1, 2) - Fraction(1, 2) * v(0, 1) + q_sym() ** 2 + 1
    assert SymPoly.parse(str(p)) == p


def test_json_round_trip():
    p = w(2, 1) ** 3 - 7 * a(4) / a(3) + ONE
    assert SymPoly.from_json(p.to_json()) == p


def test_rejects_floats():
    with pytest.raises(TypeError):
        SymPoly.const(0.5)


def test_residual_magnitude():
    assert residual_magnitude(ZERO) == "exact-zero"
    assert residual_magnitude(0) == "exact-zero"
    assert residual_magnitude(2 * w(1, 1) - 3) == 5.0
    assert residual_magnitude(1e-12 + 0j) == pytest.approx(1e-12)
    assert residual_magnitude(0.0) == 0.0


def test_equal_polys_hash_equal():
    assert hash(w(1, 1) + 1) == hash(1 + w(1, 1))
    assert {w(1, 1) + 1: "k"}[1 + w(1, 1)] == "k"


def test_indeterminate_shift():
    assert w_ind(1, 2).shifted(2, 1) == w_ind(3, 3)
    assert v_ind(0, 1).shifted(1, 0) == v_ind(1, 1)
