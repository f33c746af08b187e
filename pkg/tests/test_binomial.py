import math

import pytest

from conftest import rel
from wbinom.binomial import (BCase, family_binom_closed, binom_for, closed_form, convolution_check,
                             elliptic_binom_closed, gaussian_binomial, recursion_condition, vwbinom,
                             wbinom)
from wbinom.coeffs import ONE, q_sym, v, w
from wbinom.elliptic import random_complex, random_nome
from wbinom.errors import DegenerateParameter
from wbinom.weights import (balanced, balanced_vwp, elliptic, generic, generic_double, q_weights,
                            shift_spec, stirling_first, stirling_second, vwp)


def test_borders():
    for spec in (generic(), q_weights()):
        for n in range(6):
            assert binom_for(spec, n, 0) == 1
            assert binom_for(spec, n, n) == 1
    for n in range(6):
        assert binom_for(stirling_second(), n, n) == 1
        assert binom_for(stirling_second(), n, 0) == (1 if n == 0 else 0)
    assert wbinom(generic(), 0, 0) == 1


def test_out_of_range_is_zero():
    assert wbinom(generic(), 3, -1) == 0
    assert wbinom(generic(), 3, 4) == 0


def test_two_one():
    assert wbinom(generic(), 2, 1) == 1 + w(1, 1)


def test_double_two_one():
    # paths to (1,1): HV with v(1,1), VH with v(0,1) W(1,1)
    assert vwbinom(generic_double(), 2, 1) == v(1, 1) + v(0, 1) * w(1, 1)


def test_gaussian_symbolic():
    q = q_sym()
    assert wbinom(q_weights(), 4, 2) == 1 + q + 2 * q ** 2 + q ** 3 + q ** 4


def test_gaussian_numeric():
    q = 0.4 + 0.7j
    for n in range(9):
        for k in range(n + 1):
            assert rel(wbinom(q_weights(q), n, k), gaussian_binomial(q, n, k)) < 1e-12


def test_stirling_second_value():
    assert vwbinom(stirling_second(), 4, 2) == 7


def test_stirling_first_values():
    # signed s(4,k): 0, -6, 11, -6, 1
    assert [vwbinom(stirling_first(), 4, k) for k in range(5)] == [0, -6, 11, -6, 1]


def test_vwbinom_needs_double_family():
    with pytest.raises(ValueError):
        vwbinom(generic(), 2, 1)


def test_no_symmetry():
    assert wbinom(generic(), 3, 1) != wbinom(generic(), 3, 2)


def test_elliptic_border_values():
    args = (0.3 + 0.2j, 1.1, 0.8 - 0.1j, 0.2)
    assert elliptic_binom_closed(*args, 5, 5) == 1
    assert elliptic_binom_closed(*args, 5, 0) == 1
    assert elliptic_binom_closed(*args, 5, -1) == 0
    assert elliptic_binom_closed(*args, 5, 6) == 0


def test_elliptic_closed_vs_recursion(rng):
    checked = 0
    while checked < 20:
        aa, bb, q, p = random_complex(rng), random_complex(rng), random_complex(rng, 0.6, 1.4), random_nome(rng)
        spec = elliptic(aa, bb, q, p)
        if recursion_condition(spec, 5) > 1e6:
            continue
        assert rel(wbinom(spec, 5, 2), elliptic_binom_closed(aa, bb, q, p, 5, 2)) < 1e-9
        checked += 1


def test_vwp_closed_vs_recursion():
    spec = vwp(0.4 + 0.3j, 0.7 - 0.2j)
    assert rel(closed_form(spec, 4, 2), wbinom(spec, 4, 2)) < 1e-12


def test_balanced_vwp_border():
    spec = balanced_vwp(0.4, 0.9j, 0.6)
    for n in range(6):
        assert rel(closed_form(spec, n, n), 1) < 1e-15


def test_b0_limit_is_gaussian():
    q = 0.3 + 0.6j
    for n in range(8):
        for k in range(n + 1):
            assert rel(family_binom_closed(BCase.Balanced, {"b": 0, "q": q}, n, k),
                       gaussian_binomial(q, n, k)) < 1e-12


def test_a0_limit_is_reciprocal_gaussian():
    q = 0.8 + 0.3j
    for n in range(8):
        for k in range(n + 1):
            assert rel(family_binom_closed(BCase.VWP, {"a": 0, "q": q}, n, k),
                       gaussian_binomial(1 / q, n, k)) < 1e-12


def test_elliptic_limit_chain():
    # p = 0, then a = 0, then b = 0 lands on the Gaussian binomial
    a_, b_, q = 0.5 - 0.3j, 0.2 + 0.9j, 0.6 + 0.2j
    for n in range(7):
        for k in range(n + 1):
            p0 = elliptic_binom_closed(a_, b_, q, 0, n, k)
            bvwp = family_binom_closed(BCase.BalancedVWP, {"a": a_, "b": b_, "q": q}, n, k)
            assert rel(p0, bvwp) < 1e-12
            a0 = family_binom_closed(BCase.BalancedVWP, {"a": 0, "b": b_, "q": q}, n, k)
            assert rel(a0, family_binom_closed(BCase.Balanced, {"b": b_, "q": q}, n, k)) < 1e-12
            assert rel(a0, wbinom(balanced(b_, q), n, k)) < 1e-12
            b0 = family_binom_closed(BCase.Balanced, {"b": 0, "q": q}, n, k)
            assert rel(b0, gaussian_binomial(q, n, k)) < 1e-12


def test_closed_form_of_shifted_spec():
    base = elliptic(0.3 + 0.1j, 0.9, 0.8 + 0.1j, 0.1)
    shifted = shift_spec(base, 1, 2)
    for n in range(5):
        for k in range(n + 1):
            assert rel(closed_form(shifted, n, k), wbinom(shifted, n, k)) < 1e-10


def test_closed_form_needs_product_family():
    with pytest.raises(ValueError):
        closed_form(generic(), 2, 1)


def test_degenerate_gaussian():
    with pytest.raises(DegenerateParameter):
        gaussian_binomial(1, 2, 1)


@pytest.mark.parametrize("which", ["diagonal", "vertical", "horizontal"])
@pytest.mark.parametrize("spec", [generic(), generic_double()])
def test_symbolic_convolutions(which, spec):
    for n in range(5):
        for m in range(5 - n):
            ks = {"diagonal": range(n + m + 1), "vertical": range(1, n + 1), "horizontal": range(1, m + 1)}[which]
            for kl in ks:
                assert convolution_check(which, spec, n, m, kl) == 0


def test_diagonal_examples():
    assert convolution_check("diagonal", generic(), 2, 2, 2) == 0
    for n in range(5):
        for k in range(n + 1):
            assert convolution_check("diagonal", generic(), n, 0, k) == 0


def test_numeric_convolution_q():
    q = 0.7 + 0.4j
    for which, kl in (("diagonal", 3), ("vertical", 2), ("horizontal", 2)):
        assert abs(convolution_check(which, q_weights(q), 3, 3, kl)) < 1e-12


def test_recursion_condition_is_at_least_one():
    assert recursion_condition(q_weights(0.5), 6) == pytest.approx(1.0)
    assert recursion_condition(q_weights(-0.999), 6) > 10
    assert math.isfinite(recursion_condition(vwp(0.3, 0.7), 8))
