"""Theta-function identities and the elliptic (10V9) summation.

The theta kernel itself lives in :mod:`wbinom.theta`; this module adds the
identity residuals, the terminating 10V9 sum, its basic p = 0 case and the
convolution identities for the elliptic binomial coefficient.
"""
from __future__ import annotations

import cmath
import enum
import math
import random
from dataclasses import dataclass

from .binomial import elliptic_binom_closed
from .errors import BalancingViolation, DegenerateParameter, EllipticDegenerate, IllConditioned
from .theta import (checked_den, degeneracy_threshold, qp_factorial,
                    qp_factorial_multi, qpoch, theta, theta_prod)
from .weights import big_weight_closed, elliptic

__all__ = [
    "theta", "theta_prod", "qp_factorial", "qp_factorial_multi",
    "theta_addition_residual", "V109Params", "balanced_e", "v109_sides",
    "jackson_8phi7_sides", "Variant", "v109_convolution_terms", "v109_convolution_sides",
    "v109_convolution_residuals", "convolution_to_v109", "random_complex",
    "random_nome", "draw_until_regular", "DRAW_TOL",
]

BALANCING_TOL = 1e-12
DRAW_TOL = 1e-8


def theta_addition_residual(x, y, u, v, p) -> float:
    """Residual of the three-term addition formula A - B = C, where

        A = theta(xy, x/y, uv, u/v),  B = theta(xv, x/v, uy, u/y),  C = (u/y) theta(yv, y/v, xu, x/u)

    measured as |A - B - C| / max(|A|, |B|, |C|), the scale at which
    roundoff enters (A and B may nearly cancel).
    """
    A = theta_prod([x * y, x / y, u * v, u / v], p)
    B = theta_prod([x * v, x / v, u * y, u / y], p)
    C = (u / y) * theta_prod([y * v, y / v, x * u, x / u], p)
    scale = max(abs(A), abs(B), abs(C))
    return abs(A - B - C) / scale if scale else 0.0


# -- 10V9 ------------------------------------------------------------------

@dataclass(frozen=True)
class V109Params:
    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    q: complex
    p: complex
    n: int

    @classmethod
    def balanced(cls, a, b, c, d, q, p, n: int) -> "V109Params":
        return cls(a, b, c, d, balanced_e(a, b, c, d, q, n), q, p, n)


def balanced_e(a, b, c, d, q, n: int) -> complex:
    """The unique e with a^2 q^{n+1} = bcde."""
    return a * a * q ** (n + 1) / (b * c * d)


def _check_balanced(P: V109Params):
    lhs = P.a * P.a * P.q ** (P.n + 1)
    rhs = P.b * P.c * P.d * P.e
    if abs(lhs - rhs) > BALANCING_TOL * max(abs(lhs), abs(rhs)):
        raise BalancingViolation(f"a^2 q^(n+1) = {lhs} but bcde = {rhs}")


def v109_terms(P: V109Params) -> list[complex]:
    """The n+1 summands of the 10V9 series (balancing is not checked here)."""
    a, b, c, d, e, q, p, n = (complex(P.a), complex(P.b), complex(P.c), complex(P.d),
                              complex(P.e), complex(P.q), complex(P.p), P.n)
    top = [a, b, c, d, e, q ** (-n)]
    bottom = [q, a * q / b, a * q / c, a * q / d, a * q / e, a * q ** (n + 1)]
    lead_den = checked_den(theta(a, p), DegenerateParameter)
    terms = []
    ratio = 1 + 0j
    for k in range(n + 1):
        if k:
            qj = q ** (k - 1)
            for x, y in zip(top, bottom):
                ratio *= theta(x * qj, p) / checked_den(theta(y * qj, p), DegenerateParameter)
        terms.append(theta(a * q ** (2 * k), p) / lead_den * ratio * q**k)
    return terms


def v109_sides(P: V109Params) -> tuple[complex, complex]:
    """Both sides of the terminating, balanced 10V9 summation."""
    _check_balanced(P)
    a, b, c, d, e, q, p, n = (complex(P.a), complex(P.b), complex(P.c), complex(P.d),
                              complex(P.e), complex(P.q), complex(P.p), P.n)
    lhs = sum(v109_terms(P), 0j)
    nums = (a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d))
    dens = (a * q / b, a * q / c, a * q / d, a * q / (b * c * d))
    rhs = 1 + 0j
    for j in range(n):
        qj = q**j
        for x, y in zip(nums, dens):
            rhs *= theta(x * qj, p) / checked_den(theta(y * qj, p), DegenerateParameter)
    return lhs, rhs


def jackson_8phi7_sides(a, b, c, d, q, n: int) -> tuple[complex, complex]:
    """Jackson's terminating 8phi7 sum from plain (x;q)_k products (p = 0 oracle)."""
    a, b, c, d, q = (complex(z) for z in (a, b, c, d, q))
    e = balanced_e(a, b, c, d, q, n)
    top = [a, b, c, d, e, q ** (-n)]
    bottom = [q, a * q / b, a * q / c, a * q / d, a * q / e, a * q ** (n + 1)]
    lhs = 0j
    for k in range(n + 1):
        num = (1 - a * q ** (2 * k)) * math.prod(qpoch(x, q, k) for x in top)
        den = (1 - a) * math.prod(qpoch(x, q, k) for x in bottom)
        lhs += num / checked_den(den, DegenerateParameter) * q**k
    num = math.prod(qpoch(x, q, n) for x in (a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)))
    den = math.prod(qpoch(x, q, n) for x in (a * q / b, a * q / c, a * q / d, a * q / (b * c * d)))
    return lhs, num / checked_den(den, DegenerateParameter)


# -- elliptic convolutions -------------------------------------------------

class Variant(str, enum.Enum):
    Diagonal = "diagonal"
    Vertical = "vertical"
    Horizontal = "horizontal"


def _W(a, b, q, p, s, t):
    return big_weight_closed(elliptic(a, b, q, p), s, t)


def _binom(a, b, q, p, n, k):
    return elliptic_binom_closed(a, b, q, p, n, k)


def v109_convolution_terms(variant, a, b, q, p, n: int, m: int, kl: int):
    """Left side and the list of right-hand summands of an elliptic convolution.

    The shifted coefficient is realized by substituting (a, b) -> (aq^{ds+2dt}, bq^{2ds+dt}).

    diagonal   (k = kl): [n+m k] = sum_j [n j] [m k-j]_{aq^{2n-j}, bq^{n+j}} prod_{i=1}^{k-j} W(i+j, n-j)
    vertical   (l = kl): [n+m n] = sum_{k=0}^m [k+l-1 l-1] [n+m-l-k n-l]_{aq^{l+2k}, bq^{2l+k}} prod_{i=0}^{n-l} W(i+l, k)
    horizontal (k = kl): [n+m n] = sum_{l=0}^n [l+k-1 l] [n+m-l-k n-l]_{aq^{l+2k}, bq^{2l+k}} prod_{i=1}^{n-l} W(i+l, k)
    """
    variant = Variant(variant.value if isinstance(variant, enum.Enum) else variant)
    a, b, q, p = complex(a), complex(b), complex(q), complex(p)
    terms = []
    if variant == Variant.Diagonal:
        k = kl
        if not 0 <= k <= n + m:
            raise ValueError("diagonal variant needs 0 <= k <= n+m")
        lhs = _binom(a, b, q, p, n + m, k)
        for j in range(max(0, k - m), min(k, n) + 1):
            term = _binom(a, b, q, p, n, j) \
                * _binom(a * q ** (2 * n - j), b * q ** (n + j), q, p, m, k - j)
            for i in range(1, k - j + 1):
                term *= _W(a, b, q, p, i + j, n - j)
            terms.append(term)
        return lhs, terms
    lhs = _binom(a, b, q, p, n + m, n)
    if variant == Variant.Vertical:
        l = kl
        if not 1 <= l <= n:
            raise ValueError("vertical variant needs 1 <= l <= n")
        for k in range(0, m + 1):
            term = _binom(a, b, q, p, k + l - 1, l - 1) \
                * _binom(a * q ** (l + 2 * k), b * q ** (2 * l + k), q, p, n + m - l - k, n - l)
            for i in range(0, n - l + 1):
                term *= _W(a, b, q, p, i + l, k)
            terms.append(term)
        return lhs, terms
    k = kl
    if not 1 <= k <= m:
        raise ValueError("horizontal variant needs 1 <= k <= m")
    for l in range(0, n + 1):
        term = _binom(a, b, q, p, l + k - 1, l) \
            * _binom(a * q ** (l + 2 * k), b * q ** (2 * l + k), q, p, n + m - l - k, n - l)
        for i in range(1, n - l + 1):
            term *= _W(a, b, q, p, i + l, k)
        terms.append(term)
    return lhs, terms


def v109_convolution_sides(variant, a, b, q, p, n: int, m: int, kl: int):
    """Both sides of a convolution of elliptic binomial coefficients."""
    lhs, terms = v109_convolution_terms(variant, a, b, q, p, n, m, kl)
    return lhs, sum(terms, 0j)


def v109_convolution_residuals(variant, a, b, q, p, n: int, m: int, kl: int) -> float:
    """|LHS - RHS| / |LHS| of one elliptic convolution (absolute if LHS is 0)."""
    lhs, rhs = v109_convolution_sides(variant, a, b, q, p, n, m, kl)
    return abs(lhs - rhs) / abs(lhs) if lhs else abs(rhs)


def convolution_to_v109(variant, a, b, q, p, n: int, m: int, kl: int) -> V109Params:
    """The balanced 10V9 instance that each convolution is a rewriting of."""
    variant = Variant(variant.value if isinstance(variant, enum.Enum) else variant)
    a, b, q, p = complex(a), complex(b), complex(q), complex(p)
    if variant == Variant.Diagonal:
        k = kl
        return V109Params.balanced(b * q ** (-n) / a, q ** (-n) / a, b * q ** (1 + n + m),
                                   b * q ** (k - n - m) / a, q, p, k)
    if variant == Variant.Vertical:
        l = kl
        return V109Params.balanced(a * q**l, b * q**l, a * q ** (1 + n + m), a * q ** (-n) / b, q, p, m)
    k = kl
    return V109Params.balanced(b * q**k, a * q**k, b * q ** (1 + n + m), b * q ** (-m) / a, q, p, n)


# -- random draws ----------------------------------------------------------

def random_complex(rng: random.Random, lo: float = 0.2, hi: float = 2.0) -> complex:
    """Magnitude log-uniform in [lo, hi], phase uniform."""
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return cmath.rect(r, rng.uniform(-math.pi, math.pi))


def random_nome(rng: random.Random, lo: float = 0.05, hi: float = 0.5) -> complex:
    return cmath.rect(rng.uniform(lo, hi), rng.uniform(-math.pi, math.pi))


def draw_until_regular(rng: random.Random, draw, evaluate, max_tries: int = 1000):
    """Redraw until ``evaluate(params)`` sees no denominator below DRAW_TOL
    and raises no :class:`IllConditioned`.

    Returns ``(params, evaluate(params))`` from the first regular draw.
    """
    for _ in range(max_tries):
        params = draw(rng)
        try:
            with degeneracy_threshold(DRAW_TOL):
                return params, evaluate(params)
        except (EllipticDegenerate, DegenerateParameter, IllConditioned):
            continue
    raise RuntimeError(f"no regular parameter draw in {max_tries} attempts")
