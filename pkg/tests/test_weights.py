import pytest

from conftest import rel
from wbinom.coeffs import ONE, SymPoly, a, q_sym, v, w
from wbinom.elliptic import random_complex, random_nome
from wbinom.errors import DegenerateParameter, EllipticDegenerate
from wbinom.weights import (Family, absorb_shift, balanced, balanced_vwp, big_weight, big_weight_closed,
                            complete_sym, custom_table, elementary_sym, elliptic, generic, generic_double,
                            q_stirling_first, q_stirling_second, q_weights, shift_spec, small_weight,
                            small_weight_v, spec_from_json, spec_to_json, stirling_first, stirling_second,
                            vwp)
from wbinom.theta import theta


def _elliptic_draw(rng):
    return elliptic(random_complex(rng, 0.5, 1.5), random_complex(rng, 0.5, 1.5),
                    random_complex(rng, 0.7, 1.3), random_nome(rng, 0.05, 0.3))


def test_generic_is_identity_table():
    assert small_weight(generic(), 3, 1) == w(3, 1)
    assert small_weight_v(generic_double(), 4, 2) == v(4, 2)


def test_q_family():
    assert small_weight(q_weights(), 5, 2) == q_sym()
    assert small_weight(q_weights(0.5), 5, 2) == 0.5


def test_symmetric_families():
    assert small_weight(complete_sym(), 4, 3) == a(3) / a(2)
    assert small_weight(elementary_sym(), 4, 3) == a(7) / a(6)
    assert small_weight(complete_sym([1, 2, 6]), 9, 2) == pytest.approx(3)


def test_stirling_vertical_weights():
    for k in range(0, 6):
        assert small_weight_v(stirling_second(), k, 3) == k
    assert small_weight_v(stirling_first(), 2, 3) == -4
    assert small_weight(stirling_first(), 2, 3) == 1


def test_q_stirling_vertical_weights():
    q = q_sym()
    assert small_weight_v(q_stirling_second(), 3, 1) == 1 + q + q * q
    assert small_weight_v(q_stirling_first(), 1, 2) == -(1 + q)


def test_single_weight_v_is_one():
    assert small_weight_v(generic(), 3, 2) == 1


def test_empty_big_weight():
    for spec in (generic(), q_weights(), stirling_second()):
        assert big_weight(spec, 4, 0) == 1


def test_big_weight_product():
    assert big_weight(generic(), 1, 2) == w(1, 1) * w(1, 2)


def test_elliptic_small_weight_formula():
    aa, bb, q, p = 0.7 + 0.2j, 1.3 - 0.1j, 0.9 + 0.3j, 0.15
    s, t = 2, 3
    num = theta(aa * q ** (s + 2 * t), p) * theta(bb * q ** (2 * s + t - 2), p) * theta(aa * q ** (t - s - 1) / bb, p)
    den = theta(aa * q ** (s + 2 * t - 2), p) * theta(bb * q ** (2 * s + t), p) * theta(aa * q ** (t - s + 1) / bb, p)
    assert rel(small_weight(elliptic(aa, bb, q, p), s, t), num / den * q) < 1e-13


@pytest.mark.parametrize("make", [
    lambda r: balanced_vwp(random_complex(r), random_complex(r), random_complex(r, 0.7, 1.3)),
    lambda r: balanced(random_complex(r), random_complex(r, 0.7, 1.3)),
    lambda r: vwp(random_complex(r), random_complex(r, 0.7, 1.3)),
    _elliptic_draw,
])
def test_big_weight_closed_form(rng, make):
    for _ in range(20):
        spec = make(rng)
        for s in range(1, 5):
            for t in range(0, 5):
                assert rel(big_weight_closed(spec, s, t), big_weight(spec, s, t)) < 1e-10


def test_ratio_law_symbolic():
    for spec in (generic(), generic_double(), q_weights(), complete_sym(), elementary_sym(),
                 stirling_first(), q_stirling_second()):
        for s in range(1, 9):
            for t in range(1, 9):
                assert small_weight(spec, s, t) * big_weight(spec, s, t - 1) == big_weight(spec, s, t)


def test_ratio_law_numeric(rng):
    for spec in (_elliptic_draw(rng), vwp(0.6 + 0.1j, 0.8 - 0.2j), balanced(1.3j, 0.9 + 0.1j)):
        for s in range(1, 9):
            for t in range(1, 9):
                lhs = small_weight(spec, s, t) * big_weight(spec, s, t - 1)
                assert rel(lhs, big_weight(spec, s, t)) < 1e-12


def test_shift_by_zero_is_identity():
    spec = q_weights()
    assert shift_spec(spec, 0, 0) is spec


def test_generic_shift():
    j, n = 2, 5
    spec = shift_spec(generic(), j, n - j)
    assert small_weight(spec, 1, 1) == w(1 + j, 1 + n - j)


def test_shift_composition():
    for base in (generic(), generic_double(), elementary_sym()):
        left = shift_spec(shift_spec(base, 1, 2), 3, 1)
        right = shift_spec(base, 4, 3)
        for s in range(1, 7):
            for t in range(1, 7):
                assert small_weight(left, s, t) == small_weight(right, s, t)
                assert small_weight_v(left, s, t) == small_weight_v(right, s, t)


def test_elliptic_shift_is_substitution(rng):
    for _ in range(50):
        aa, bb, q, p = (random_complex(rng, 0.5, 1.5), random_complex(rng, 0.5, 1.5),
                        random_complex(rng, 0.8, 1.2), random_nome(rng, 0.05, 0.3))
        n, j = 4, 1
        shifted = shift_spec(elliptic(aa, bb, q, p), j, n - j)
        substituted = elliptic(aa * q ** (2 * n - j), bb * q ** (n + j), q, p)
        assert absorb_shift(shifted) == substituted
        try:
            for s, t in ((1, 1), (2, 3), (3, 2)):
                assert rel(small_weight(shifted, s, t), small_weight(substituted, s, t)) < 1e-10
        except EllipticDegenerate:
            continue


def test_elliptic_total_ellipticity(rng):
    for _ in range(20):
        aa, bb, q, p = (random_complex(rng, 0.5, 1.5), random_complex(rng, 0.5, 1.5),
                        random_complex(rng, 0.8, 1.2), random_nome(rng, 0.05, 0.3))
        base = small_weight(elliptic(aa, bb, q, p), 2, 3)
        assert rel(small_weight(elliptic(p * aa, bb, q, p), 2, 3), base) < 1e-9
        assert rel(small_weight(elliptic(aa, p * bb, q, p), 2, 3), base) < 1e-9


def test_elliptic_invariants():
    with pytest.raises(ValueError):
        elliptic(0.5, 0.5, 0.5, 1.0)
    with pytest.raises(ValueError):
        shift_spec(generic(), -1, 0)


def test_degenerate_denominator_raises():
    # b q^{2s+t} = 1 at (s,t) = (1,1) makes a denominator theta vanish
    q = 0.9
    spec = elliptic(0.7, q ** -3, q, 0.1)
    with pytest.raises(EllipticDegenerate):
        small_weight(spec, 1, 1)
    with pytest.raises(DegenerateParameter):
        small_weight(balanced(q ** -3, q), 1, 1)


def test_index_preconditions():
    with pytest.raises(ValueError):
        small_weight(generic(), 0, 1)
    with pytest.raises(ValueError):
        big_weight(generic(), 0, 1)
    with pytest.raises(ValueError):
        small_weight_v(generic_double(), 0, 0)


def test_custom_table():
    spec = custom_table({(1, 1): SymPoly.const(2), (1, 2): SymPoly.const(3)}, None)
    assert big_weight(spec, 1, 2) == 6
    with pytest.raises(Exception):
        small_weight(spec, 2, 1)


@pytest.mark.parametrize("spec", [
    generic(), shift_spec(generic_double(), 1, 2), q_weights(0.5 + 0.5j), q_weights(),
    elliptic(0.21, 0.047, 0.7, 0.1), complete_sym([1, 2, 3]), vwp(0.3, 0.6),
    custom_table({(1, 1): 2 * w(1, 1)}, {(0, 1): ONE}),
])
def test_json_round_trip(spec):
    assert spec_from_json(spec_to_json(spec)) == spec


def test_family_names():
    assert {f.value for f in Family} >= {"generic", "generic-double", "q", "elliptic", "stirling2"}
