"""Modified Jacobi theta function and (q,p)-shifted factorials.

    theta(x; p) = (x; p)_inf (p/x; p)_inf

The infinite products are truncated adaptively: with eps = 1e-17 the
number of factors is ``ceil(ln(eps / max(1, |x|, 1/|x|)) / ln|p|) + 2``,
so both tails ``|x| |p|^N`` and ``|p|^N / |x|`` are below eps.
"""
from __future__ import annotations

import contextlib
import contextvars
import math

from .errors import DegenerateParameter, EllipticDegenerate, ZeroArgument

EPS = 1e-17
DEGENERATE_TOL = 1e-13


def truncation_index(x: complex, p: complex, eps: float = EPS) -> int:
    ap = abs(p)
    if ap == 0:
        return 1
    if ap >= 1:
        raise ValueError(f"theta needs |p| < 1, got |p| = {ap}")
    ax = abs(x)
    scale = max(1.0, ax, 1.0 / ax)
    return math.ceil(math.log(eps / scale) / math.log(ap)) + 2


def theta(x: complex, p: complex, n_terms: int | None = None) -> complex:
    x = complex(x)
    p = complex(p)
    if x == 0:
        raise ZeroArgument("theta(x; p) is undefined at x = 0")
    if n_terms is None:
        n_terms = truncation_index(x, p)
    result = 1 + 0j
    pk = 1 + 0j
    for _ in range(n_terms):
        result *= (1 - x * pk) * (1 - pk * p / x)
        pk *= p
    return result


def theta_prod(xs, p: complex) -> complex:
    """theta(x_1, ..., x_m; p) = prod theta(x_k; p)."""
    result = 1 + 0j
    for x in xs:
        result *= theta(x, p)
    return result


_threshold = contextvars.ContextVar("degenerate_threshold", default=DEGENERATE_TOL)


@contextlib.contextmanager
def degeneracy_threshold(tol: float):
    """Temporarily raise the |denominator| cutoff (used to reject random draws)."""
    token = _threshold.set(tol)
    try:
        yield
    finally:
        _threshold.reset(token)


def checked_den(value: complex, exc=EllipticDegenerate) -> complex:
    tol = _threshold.get()
    if abs(value) < tol:
        raise exc(f"vanishing factor in a denominator: |{value}| < {tol}")
    return value


def qp_factorial(a: complex, q: complex, p: complex, n: int) -> complex:
    """(a; q, p)_n for any integer n; p = 0 gives the basic (a; q)_n."""
    a = complex(a)
    q = complex(q)
    if n == 0:
        return 1 + 0j
    if n > 0:
        result = 1 + 0j
        for k in range(n):
            result *= theta(a * q**k, p)
        return result
    den = 1 + 0j
    for k in range(-n):
        den *= checked_den(theta(a * q ** (n + k), p), DegenerateParameter)
    return 1 / den


def qp_factorial_multi(params, q: complex, p: complex, n: int) -> complex:
    """(a_1, ..., a_m; q, p)_n."""
    result = 1 + 0j
    for a in params:
        result *= qp_factorial(a, q, p, n)
    return result


def qpoch(a: complex, q: complex, n: int) -> complex:
    """Basic q-shifted factorial (a; q)_n, n >= 0, as a plain finite product."""
    if n < 0:
        raise ValueError("qpoch is only defined here for n >= 0")
    result = 1 + 0j
    x = complex(a)
    for _ in range(n):
        result *= 1 - x
        x *= q
    return result


def qpoch_multi(params, q: complex, n: int) -> complex:
    result = 1 + 0j
    for a in params:
        result *= qpoch(a, q, n)
    return result
