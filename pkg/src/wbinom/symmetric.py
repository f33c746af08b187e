"""Complete and elementary symmetric functions and their convolution identities.

Variables are given as a sequence of values (SymPoly or numbers).  The
helper :func:`avars` builds the symbolic list ``a_i, ..., a_j``; an end
index below the start gives the empty list, for which h_r and e_r vanish
when r > 0.
"""
from __future__ import annotations

import enum
import itertools
import math

from .binomial import wbinom
from .coeffs import ONE, ZERO, SymPoly, a_ind
from .ncalgebra import binomial_power
from .weights import complete_sym, elementary_sym


def avars(start: int, end: int) -> list:
    """[a_start, ..., a_end] as symbolic polynomials (empty when end < start)."""
    return [SymPoly.var(a_ind(i)) for i in range(start, end + 1)]


def _one_like(xs):
    return ONE if not xs or isinstance(xs[0], SymPoly) else 1


def complete_h(k: int, xs) -> object:
    """h_k(xs) via h_k(x_0..x_m) = h_k(x_0..x_{m-1}) + x_m h_{k-1}(x_0..x_m)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    xs = list(xs)
    one = _one_like(xs)
    if k == 0:
        return one
    h = [one] + [0 * one] * k
    for x in xs:
        for j in range(1, k + 1):
            h[j] = h[j] + x * h[j - 1]
    return h[k]


def elementary_e(k: int, xs) -> object:
    """e_k(xs) via e_k(x_1..x_{n+1}) = e_k(x_1..x_n) + x_{n+1} e_{k-1}(x_1..x_n)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    xs = list(xs)
    one = _one_like(xs)
    if k == 0:
        return one
    e = [one] + [0 * one] * k
    for x in xs:
        for j in range(k, 0, -1):
            e[j] = e[j] + x * e[j - 1]
    return e[k]


def complete_h_bruteforce(k: int, xs):
    """Monomial-sum definition: weakly increasing index tuples."""
    xs = list(xs)
    one = _one_like(xs)
    total = 0 * one
    for combo in itertools.combinations_with_replacement(xs, k):
        total = total + math.prod(combo, start=one)
    return total if k else one


def elementary_e_bruteforce(k: int, xs):
    """Monomial-sum definition: strictly increasing index tuples."""
    xs = list(xs)
    one = _one_like(xs)
    total = 0 * one
    for combo in itertools.combinations(xs, k):
        total = total + math.prod(combo, start=one)
    return total if k else one


class SymFamily(str, enum.Enum):
    H = "h"
    E = "e"


def _first_nonzero(residuals):
    for r in residuals:
        if not r.is_zero():
            return r
    return ZERO


def sym_binom_check(family, n: int) -> SymPoly:
    """(x+y)^n against the h- or e-form of its coefficients.

    h: coefficient of x^k y^{n-k} times a_0^k must be h_k(a_0..a_{n-k})
    e: coefficient of x^k y^{n-k} times a_1...a_k must be e_k(a_1..a_n)
    Returns the first nonzero difference, or zero.
    """
    family = SymFamily(family.value if isinstance(family, enum.Enum) else family)
    spec = complete_sym() if family == SymFamily.H else elementary_sym()
    power = binomial_power(n, spec)
    out = []
    for k in range(n + 1):
        c = power.coeff(k, n - k)
        if family == SymFamily.H:
            out.append(c * SymPoly.var(a_ind(0), k) - complete_h(k, avars(0, n - k)))
        else:
            clear = math.prod(avars(1, k), start=ONE)
            out.append(c * clear - elementary_e(k, avars(1, n)))
    return _first_nonzero(out)


def bridge_check(family, n: int, k: int) -> SymPoly:
    """wbinom under the h/e specialization against h_k / e_k, denominators cleared."""
    family = SymFamily(family.value if isinstance(family, enum.Enum) else family)
    if family == SymFamily.H:
        return wbinom(complete_sym(), n, k) * SymPoly.var(a_ind(0), k) - complete_h(k, avars(0, n - k))
    clear = math.prod(avars(1, k), start=ONE)
    return wbinom(elementary_sym(), n, k) * clear - elementary_e(k, avars(1, n))


class SymIdentity(str, enum.Enum):
    H1 = "h1"
    H2 = "h2"
    SchurH = "schur-h"
    SchurE = "schur-e"
    E1 = "e1"
    E2 = "e2"


def sym_identity_sides(which, n: int, m: int, kl: int):
    """Both sides of one of the six convolution identities.

    h1      (k):  h_k(a_0..a_{n+m-k}) = sum_j h_j(a_0..a_{n-j}) h_{k-j}(a_{n-j}..a_{n+m-k})
    h2      (l):  h_n(a_0..a_m) = sum_{k=0}^m h_{l-1}(a_0..a_k) a_k h_{n-l}(a_k..a_m)
    schur-h (k):  h_n(a_0..a_m) = sum_l h_l(a_0..a_{k-1}) h_{n-l}(a_k..a_m)
    schur-e (k):  e_k(a_1..a_{n+m}) = sum_j e_j(a_1..a_n) e_{k-j}(a_{n+1}..a_{n+m})
    e1      (l):  e_n(a_1..a_{n+m}) = sum_{k=0}^m e_{l-1}(a_1..a_{l+k-1}) a_{l+k} e_{n-l}(a_{l+k+1}..a_{n+m})
    e2      (k):  e_n(a_1..a_{n+m}) = sum_{l=0}^n e_l(a_1..a_{l+k-1}) e_{n-l}(a_{l+k+1}..a_{n+m})
    """
    which = SymIdentity(which.value if isinstance(which, enum.Enum) else which)
    h, e, A = complete_h, elementary_e, avars
    if which == SymIdentity.H1:
        k = kl
        _need(0 <= k <= n + m, "h1 needs 0 <= k <= n+m")
        lhs = h(k, A(0, n + m - k))
        rhs = sum((h(j, A(0, n - j)) * h(k - j, A(n - j, n + m - k)) for j in range(min(k, n) + 1)), ZERO)
    elif which == SymIdentity.H2:
        l = kl
        _need(1 <= l <= n, "h2 needs 1 <= l <= n")
        lhs = h(n, A(0, m))
        rhs = sum((h(l - 1, A(0, k)) * A(k, k)[0] * h(n - l, A(k, m)) for k in range(m + 1)), ZERO)
    elif which == SymIdentity.SchurH:
        k = kl
        _need(1 <= k <= m, "schur-h needs 1 <= k <= m")
        lhs = h(n, A(0, m))
        rhs = sum((h(l, A(0, k - 1)) * h(n - l, A(k, m)) for l in range(n + 1)), ZERO)
    elif which == SymIdentity.SchurE:
        k = kl
        _need(0 <= k <= n + m, "schur-e needs 0 <= k <= n+m")
        lhs = e(k, A(1, n + m))
        rhs = sum((e(j, A(1, n)) * e(k - j, A(n + 1, n + m)) for j in range(min(k, n) + 1)), ZERO)
    elif which == SymIdentity.E1:
        l = kl
        _need(1 <= l <= n, "e1 needs 1 <= l <= n")
        lhs = e(n, A(1, n + m))
        rhs = sum((e(l - 1, A(1, l + k - 1)) * A(l + k, l + k)[0] * e(n - l, A(l + k + 1, n + m))
                   for k in range(m + 1)), ZERO)
    else:
        k = kl
        _need(1 <= k <= m, "e2 needs 1 <= k <= m")
        lhs = e(n, A(1, n + m))
        rhs = sum((e(l, A(1, l + k - 1)) * e(n - l, A(l + k + 1, n + m)) for l in range(n + 1)), ZERO)
    return lhs, rhs


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def sym_identity_check(which, n: int, m: int, kl: int) -> SymPoly:
    lhs, rhs = sym_identity_sides(which, n, m, kl)
    return lhs - rhs


def admissible(which, n: int, m: int) -> range:
    """The fixed-index values allowed for an identity at sizes (n, m)."""
    which = SymIdentity(which.value if isinstance(which, enum.Enum) else which)
    if which in (SymIdentity.H1, SymIdentity.SchurE):
        return range(0, n + m + 1)
    if which in (SymIdentity.H2, SymIdentity.E1):
        return range(1, n + 1)
    return range(1, m + 1)
