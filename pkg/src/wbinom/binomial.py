"""Weight-dependent binomial coefficients and their convolution formulas.

    [0 0] = 1,   [n k] = 0 for k < 0 or k > n,
    [n+1 k] = [n k] v(k, n+1-k) + [n k-1] W(k, n+1-k)

with v == 1 for single-weight families.  Closed forms are provided for the
elliptic coefficient and its three basic-hypergeometric specializations.
"""
from __future__ import annotations

import enum
import threading
from functools import lru_cache

from .errors import DegenerateParameter
from .theta import checked_den, qpoch, theta
from .weights import (ELLIPTIC_LIKE, Family, WeightSpec, absorb_shift,
                      big_weight, shift_spec, small_weight_v)


class BinomTable:
    """Row-by-row memo of [n k] for one spec (shift included).

    Safe to share between threads: rows are appended under a lock and
    never mutated afterwards.
    """

    def __init__(self, spec: WeightSpec, double: bool | None = None):
        self.spec = spec
        self.double = spec.is_double if double is None else double
        self._rows = [[spec.one()]]
        self._lock = threading.Lock()

    def _extend(self, n: int):
        with self._lock:
            spec = self.spec
            while len(self._rows) <= n:
                N = len(self._rows)
                prev = self._rows[-1]
                row = []
                for k in range(N + 1):
                    val = spec.zero()
                    if k <= N - 1:
                        stay = prev[k]
                        if self.double:
                            stay = stay * small_weight_v(spec, k, N - k)
                        val = val + stay
                    if k >= 1:
                        val = val + prev[k - 1] * big_weight(spec, k, N - k)
                    row.append(val)
                self._rows.append(row)

    def __getitem__(self, nk):
        n, k = nk
        if n < 0:
            raise ValueError("n must be >= 0")
        if k < 0 or k > n:
            return self.spec.zero()
        if n >= len(self._rows):
            self._extend(n)
        return self._rows[n][k]


@lru_cache(maxsize=4096)
def table_for(spec: WeightSpec, double: bool) -> BinomTable:
    return BinomTable(spec, double)


def wbinom(spec: WeightSpec, n: int, k: int):
    """Weight-dependent binomial coefficient (v-weights ignored)."""
    return table_for(spec, False)[n, k]


def vwbinom(spec: WeightSpec, n: int, k: int):
    """Double weight-dependent binomial coefficient (v on vertical steps)."""
    if not spec.is_double:
        raise ValueError(f"{spec.family.value} is not a double-weight family")
    return table_for(spec, True)[n, k]


def binom_for(spec: WeightSpec, n: int, k: int):
    """vwbinom for double-weight specs, wbinom otherwise."""
    return table_for(spec, spec.is_double)[n, k]


# -- closed forms ----------------------------------------------------------

def _theta_ratio(nums, dens, q, p, m: int) -> complex:
    """prod_i (nums_i; q,p)_m / (dens_i; q,p)_m, factor by factor to avoid overflow."""
    result = 1 + 0j
    for i in range(m):
        qi = q**i
        for x, y in zip(nums, dens):
            if x != y:  # identical factors cancel exactly
                result *= theta(x * qi, p) / checked_den(theta(y * qi, p))
    return result


def elliptic_binom_closed(a, b, q, p, n: int, k: int) -> complex:
    """(q^{1+k}, aq^{1+k}, bq^{1+k}, aq^{1-k}/b; q,p)_{n-k}
    / (q, aq, bq^{1+2k}, aq/b; q,p)_{n-k}"""
    if k < 0 or k > n:
        return 0j
    a, b, q, p = complex(a), complex(b), complex(q), complex(p)
    m = n - k
    return _theta_ratio([q ** (1 + k), a * q ** (1 + k), b * q ** (1 + k), a * q ** (1 - k) / b],
                        [q, a * q, b * q ** (1 + 2 * k), a * q / b], q, p, m)


def _qpoch_den(x, q, m: int) -> complex:
    den = 1 + 0j
    for i in range(m):
        den *= checked_den(1 - x * q**i, DegenerateParameter)
    return den


class BCase(str, enum.Enum):
    BalancedVWP = "balanced-vwp"
    Balanced = "balanced"
    VWP = "vwp"


def family_binom_closed(case, params: dict, n: int, k: int) -> complex:
    """Basic-hypergeometric closed forms.

    balanced-vwp: (q^{1+k}, aq^{1+k}, bq^{1+k}, aq^{1-k}/b; q)_{n-k} / (q, aq, bq^{1+2k}, aq/b; q)_{n-k}
    balanced:     (q^{1+k}, bq^{1+k}; q)_{n-k} / (q, bq^{1+2k}; q)_{n-k}
    vwp:          (q^{1+k}, aq^{1+k}; q)_{n-k} / (q, aq; q)_{n-k} * q^{k(k-n)}
    """
    case = BCase(case.value if isinstance(case, enum.Enum) else case)
    if k < 0 or k > n:
        return 0j
    q = complex(params["q"])
    m = n - k
    if case == BCase.BalancedVWP:
        a, b = complex(params["a"]), complex(params["b"])
        num = qpoch(q ** (1 + k), q, m) * qpoch(a * q ** (1 + k), q, m) \
            * qpoch(b * q ** (1 + k), q, m) * qpoch(a * q ** (1 - k) / b, q, m)
        den = _qpoch_den(q, q, m) * _qpoch_den(a * q, q, m) \
            * _qpoch_den(b * q ** (1 + 2 * k), q, m) * _qpoch_den(a * q / b, q, m)
        return num / den
    if case == BCase.Balanced:
        b = complex(params["b"])
        num = qpoch(q ** (1 + k), q, m) * qpoch(b * q ** (1 + k), q, m)
        den = _qpoch_den(q, q, m) * _qpoch_den(b * q ** (1 + 2 * k), q, m)
        return num / den
    a = complex(params["a"])
    num = qpoch(q ** (1 + k), q, m) * qpoch(a * q ** (1 + k), q, m)
    den = _qpoch_den(q, q, m) * _qpoch_den(a * q, q, m)
    return num / den * q ** (k * (k - n))


def closed_form(spec: WeightSpec, n: int, k: int) -> complex:
    """Closed form of [n k] for the elliptic and basic-hypergeometric families."""
    if spec.family not in ELLIPTIC_LIKE:
        raise ValueError(f"no closed form for {spec.family.value} weights")
    base = absorb_shift(spec)
    params = dict(base.params)
    if spec.family == Family.Elliptic:
        return elliptic_binom_closed(params["a"], params["b"], params["q"], params["p"], n, k)
    return family_binom_closed(spec.family.value, params, n, k)


def gaussian_binomial(q, n: int, k: int) -> complex:
    """(q;q)_n / ((q;q)_k (q;q)_{n-k})."""
    if k < 0 or k > n:
        return 0j
    q = complex(q)
    return qpoch(q, q, n) / (_qpoch_den(q, q, k) * _qpoch_den(q, q, n - k))


# -- convolutions ----------------------------------------------------------

class Convolution(str, enum.Enum):
    Diagonal = "diagonal"
    Vertical = "vertical"
    Horizontal = "horizontal"


def _big_product(spec, pairs):
    result = spec.one()
    for s, t in pairs:
        result = result * big_weight(spec, s, t)
    return result


def convolution_sides(which, spec: WeightSpec, n: int, m: int, kl: int):
    """Both sides of a convolution formula.

    diagonal   (k = kl):  [n+m k] = sum_j [n j] {[m k-j]}_(j,n-j) prod_{i=1}^{k-j} W(i+j, n-j)
    vertical   (l = kl):  [n+m n] = sum_{k=0}^m [k+l-1 l-1] {[n+m-l-k n-l]}_(l,k) prod_{i=0}^{n-l} W(i+l, k)
    horizontal (k = kl):  [n+m n] = sum_{l=0}^n [l+k-1 l] v(l,k) {[n+m-l-k n-l]}_(l,k) prod_{i=1}^{n-l} W(i+l, k)

    ``{c}_(i,j)`` is c evaluated under the weight spec shifted by (i, j).
    """
    which = Convolution(which.value if isinstance(which, enum.Enum) else which)
    if n < 0 or m < 0:
        raise ValueError("n, m must be >= 0")
    if which == Convolution.Diagonal:
        k = kl
        lhs = binom_for(spec, n + m, k)
        rhs = spec.zero()
        for j in range(0, min(k, n) + 1):
            if k - j > m:
                continue
            shifted = shift_spec(spec, j, n - j)
            term = binom_for(spec, n, j) * binom_for(shifted, m, k - j)
            rhs = rhs + term * _big_product(spec, [(i + j, n - j) for i in range(1, k - j + 1)])
        return lhs, rhs
    if which == Convolution.Vertical:
        l = kl
        if not 1 <= l <= n:
            raise ValueError("vertical convolution needs 1 <= l <= n")
        lhs = binom_for(spec, n + m, n)
        rhs = spec.zero()
        for k in range(0, m + 1):
            shifted = shift_spec(spec, l, k)
            term = binom_for(spec, k + l - 1, l - 1) * binom_for(shifted, n + m - l - k, n - l)
            rhs = rhs + term * _big_product(spec, [(i + l, k) for i in range(0, n - l + 1)])
        return lhs, rhs
    k = kl
    if not 1 <= k <= m:
        raise ValueError("horizontal convolution needs 1 <= k <= m")
    lhs = binom_for(spec, n + m, n)
    rhs = spec.zero()
    for l in range(0, n + 1):
        shifted = shift_spec(spec, l, k)
        term = binom_for(spec, l + k - 1, l) * binom_for(shifted, n + m - l - k, n - l)
        if spec.is_double:
            term = term * small_weight_v(spec, l, k)
        rhs = rhs + term * _big_product(spec, [(i + l, k) for i in range(1, n - l + 1)])
    return lhs, rhs


def convolution_check(which, spec: WeightSpec, n: int, m: int, kl: int):
    """LHS - RHS of a convolution formula (exact zero for symbolic specs)."""
    lhs, rhs = convolution_sides(which, spec, n, m, kl)
    return lhs - rhs


def recursion_condition(spec: WeightSpec, n_max: int) -> float:
    """Worst ratio (recursion run on |terms|) / |[n k]| over 0 <= k <= n <= n_max.

    A large value means the two recursion terms nearly cancel somewhere, so
    double-precision values lose about log10 of it in digits.
    """
    mag = [1.0]
    worst = 1.0
    for N in range(1, n_max + 1):
        row = []
        for k in range(N + 1):
            val = 0.0
            if k <= N - 1:
                stay = mag[k]
                if spec.is_double:
                    stay *= abs(complex(small_weight_v(spec, k, N - k)))
                val += stay
            if k >= 1:
                val += mag[k - 1] * abs(complex(big_weight(spec, k, N - k)))
            row.append(val)
            exact = abs(complex(binom_for(spec, N, k)))
            worst = max(worst, val / exact if exact else float("inf"))
        mag = row
    return worst
