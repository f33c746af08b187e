"""Weight families: small weights w(s,t), v(s,t), big weights W(s,t).

A :class:`WeightSpec` names a family, its parameters and an index shift
``(ds, dt)``.  Every family formula is applied at the shifted indices
``(s + ds, t + dt)``; shifting is how conjugation by ``x^i y^j`` acts on
coefficients (``x w(s,t) = w(s+1,t) x``, ``y w(s,t) = w(s,t+1) y``).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace
from typing import Mapping

from .coeffs import ONE, SymPoly, a, q_sym, v, w
from .errors import DegenerateParameter
from .theta import checked_den, theta


class Family(str, enum.Enum):
    GenericSymbolic = "generic"
    GenericDoubleSymbolic = "generic-double"
    Q = "q"
    CompleteSym = "complete"
    ElementarySym = "elementary"
    Elliptic = "elliptic"
    BalancedVWP = "balanced-vwp"
    Balanced = "balanced"
    VWP = "vwp"
    StirlingSecond = "stirling2"
    StirlingFirst = "stirling1"
    QStirlingSecond = "q-stirling2"
    QStirlingFirst = "q-stirling1"
    CustomTable = "custom"


DOUBLE_FAMILIES = {
    Family.GenericDoubleSymbolic, Family.StirlingSecond, Family.StirlingFirst,
    Family.QStirlingSecond, Family.QStirlingFirst,
}
NUMERIC_ONLY = {Family.Elliptic, Family.BalancedVWP, Family.Balanced, Family.VWP}
# families whose weights are functions of (a, b) that a shift acts on by
# substitution a -> a q^(ds + 2 dt), b -> b q^(2 ds + dt)
ELLIPTIC_LIKE = {Family.Elliptic, Family.BalancedVWP, Family.Balanced, Family.VWP}


@dataclass(frozen=True)
class WeightSpec:
    family: Family
    params: tuple = ()
    shift: tuple = (0, 0)

    def __post_init__(self):
        ds, dt = self.shift
        if ds < 0 or dt < 0:
            raise ValueError(f"shift components must be >= 0, got {self.shift}")
        if self.family == Family.Elliptic and abs(self.param("p")) >= 1:
            raise ValueError("elliptic weights need |p| < 1")
        if self.family in NUMERIC_ONLY and self.param("q") == 0:
            raise ValueError("q must be nonzero")

    def param(self, name, default=None):
        for k, val in self.params:
            if k == name:
                return val
        return default

    @property
    def is_double(self) -> bool:
        if self.family == Family.CustomTable:
            return self.param("v") is not None
        return self.family in DOUBLE_FAMILIES

    @property
    def is_symbolic(self) -> bool:
        f = self.family
        if f in NUMERIC_ONLY:
            return False
        if f in (Family.Q, Family.QStirlingFirst, Family.QStirlingSecond):
            return self.param("q") is None
        if f in (Family.CompleteSym, Family.ElementarySym):
            return self.param("a") is None
        if f == Family.CustomTable:
            return self.param("numeric") is None
        return True

    def one(self):
        return ONE if self.is_symbolic else 1 + 0j

    def zero(self):
        return 0 * self.one()

    def __str__(self):
        return json.dumps(spec_to_json(self), sort_keys=True)


def _params(**kw) -> tuple:
    return tuple(sorted((k, val) for k, val in kw.items() if val is not None))


# -- constructors ----------------------------------------------------------

def generic() -> WeightSpec:
    return WeightSpec(Family.GenericSymbolic)


def generic_double() -> WeightSpec:
    return WeightSpec(Family.GenericDoubleSymbolic)


def q_weights(q: complex | None = None) -> WeightSpec:
    """w(s,t) = q; ``q=None`` keeps q as an indeterminate."""
    return WeightSpec(Family.Q, _params(q=None if q is None else complex(q)))


def complete_sym(avals=None) -> WeightSpec:
    """w(s,t) = a_t / a_(t-1); ``avals`` is an optional numeric table a_0, a_1, ..."""
    return WeightSpec(Family.CompleteSym,
                      _params(a=None if avals is None else tuple(complex(x) for x in avals)))


def elementary_sym(avals=None) -> WeightSpec:
    """w(s,t) = a_(s+t) / a_(s+t-1)."""
    return WeightSpec(Family.ElementarySym,
                      _params(a=None if avals is None else tuple(complex(x) for x in avals)))


def elliptic(a, b, q, p) -> WeightSpec:
    return WeightSpec(Family.Elliptic, _params(a=complex(a), b=complex(b), q=complex(q), p=complex(p)))


def balanced_vwp(a, b, q) -> WeightSpec:
    return WeightSpec(Family.BalancedVWP, _params(a=complex(a), b=complex(b), q=complex(q)))


def balanced(b, q) -> WeightSpec:
    return WeightSpec(Family.Balanced, _params(b=complex(b), q=complex(q)))


def vwp(a, q) -> WeightSpec:
    return WeightSpec(Family.VWP, _params(a=complex(a), q=complex(q)))


def stirling_second() -> WeightSpec:
    return WeightSpec(Family.StirlingSecond)


def stirling_first() -> WeightSpec:
    return WeightSpec(Family.StirlingFirst)


def q_stirling_second(q: complex | None = None) -> WeightSpec:
    return WeightSpec(Family.QStirlingSecond, _params(q=None if q is None else complex(q)))


def q_stirling_first(q: complex | None = None) -> WeightSpec:
    return WeightSpec(Family.QStirlingFirst, _params(q=None if q is None else complex(q)))


def custom_table(w_table: Mapping, v_table: Mapping | None = None) -> WeightSpec:
    """Explicit tables {(s, t): value}; values are all exact or all complex."""
    values = list(w_table.values()) + list((v_table or {}).values())
    numeric = any(isinstance(x, (complex, float)) for x in values)

    def conv(x):
        if numeric:
            return complex(x)
        return x if isinstance(x, SymPoly) else SymPoly.const(x)

    wt = tuple(sorted((tuple(k), conv(x)) for k, x in w_table.items()))
    vt = None if v_table is None else tuple(sorted((tuple(k), conv(x)) for k, x in v_table.items()))
    return WeightSpec(Family.CustomTable, _params(w=wt, v=vt, numeric=True if numeric else None))


# -- shifting --------------------------------------------------------------

def shift_spec(spec: WeightSpec, ds: int, dt: int) -> WeightSpec:
    if ds < 0 or dt < 0:
        raise ValueError("shift_spec needs ds, dt >= 0")
    if ds == 0 and dt == 0:
        return spec
    s0, t0 = spec.shift
    return replace(spec, shift=(s0 + ds, t0 + dt))


def absorb_shift(spec: WeightSpec) -> WeightSpec:
    """Equivalent unshifted spec for (a,b)-parametrised families.

    A shift by (ds, dt) is the substitution a -> a q^(ds+2dt),
    b -> b q^(2ds+dt).
    """
    if spec.family not in ELLIPTIC_LIKE:
        raise ValueError(f"{spec.family.value} weights are not parametrised by (a, b)")
    ds, dt = spec.shift
    q = spec.param("q")
    new = []
    for k, val in spec.params:
        if k == "a":
            val = val * q ** (ds + 2 * dt)
        elif k == "b":
            val = val * q ** (2 * ds + dt)
        new.append((k, val))
    return WeightSpec(spec.family, tuple(new))


# -- small and big weights -------------------------------------------------

def _den(x: complex) -> complex:
    return checked_den(x, DegenerateParameter)


def _table_value(table, key, family):
    for k, val in table:
        if k == key:
            return val
    raise KeyError(f"{family} table has no entry for {key}")


def _qint(n: int, q):
    """1 + q + ... + q^(n-1) (zero for n = 0)."""
    if n < 0:
        raise ValueError("q-integer needs n >= 0")
    total = 0 * q
    for i in range(n):
        total = total + q ** i
    return total


def small_weight(spec: WeightSpec, s: int, t: int):
    """w(s + ds, t + dt) in the family of ``spec``."""
    if s < 1 or t < 1:
        raise ValueError(f"small weights need s, t >= 1, got ({s},{t})")
    ds, dt = spec.shift
    S, T = s + ds, t + dt
    f = spec.family
    if f in (Family.GenericSymbolic, Family.GenericDoubleSymbolic):
        return w(S, T)
    if f == Family.Q:
        q = spec.param("q")
        return q_sym() if q is None else q
    if f == Family.CompleteSym:
        return _a_ratio(spec, T)
    if f == Family.ElementarySym:
        return _a_ratio(spec, S + T)
    if f == Family.Elliptic:
        aa, bb, q, p = (spec.param(k) for k in "abqp")
        num = theta(aa * q ** (S + 2 * T), p) * theta(bb * q ** (2 * S + T - 2), p) \
            * theta(aa * q ** (T - S - 1) / bb, p)
        den = checked_den(theta(aa * q ** (S + 2 * T - 2), p)) * checked_den(theta(bb * q ** (2 * S + T), p)) \
            * checked_den(theta(aa * q ** (T - S + 1) / bb, p))
        return num / den * q
    if f == Family.BalancedVWP:
        aa, bb, q = (spec.param(k) for k in "abq")
        num = (1 - aa * q ** (S + 2 * T)) * (1 - bb * q ** (2 * S + T - 2)) * (1 - aa * q ** (T - S - 1) / bb)
        den = _den(1 - aa * q ** (S + 2 * T - 2)) * _den(1 - bb * q ** (2 * S + T)) \
            * _den(1 - aa * q ** (T - S + 1) / bb)
        return num / den * q
    if f == Family.Balanced:
        bb, q = spec.param("b"), spec.param("q")
        return (1 - bb * q ** (2 * S + T - 2)) / _den(1 - bb * q ** (2 * S + T)) * q
    if f == Family.VWP:
        aa, q = spec.param("a"), spec.param("q")
        return (1 - aa * q ** (S + 2 * T)) / _den(1 - aa * q ** (S + 2 * T - 2)) / q
    if f in (Family.StirlingFirst, Family.StirlingSecond):
        return ONE
    if f in (Family.QStirlingFirst, Family.QStirlingSecond):
        return spec.one()
    if f == Family.CustomTable:
        return _table_value(spec.param("w"), (S, T), "w")
    raise ValueError(f"unknown family {f}")


def _a_ratio(spec: WeightSpec, i: int):
    table = spec.param("a")
    if table is None:
        return a(i) * a(i - 1) ** -1
    if i >= len(table):
        raise ValueError(f"numeric a-table too short: need a_{i}")
    return table[i] / _den(table[i - 1])


def small_weight_v(spec: WeightSpec, s: int, t: int):
    """v(s + ds, t + dt); identically 1 for single-weight families."""
    if s < 0 or t < 1:
        raise ValueError(f"v weights need s >= 0, t >= 1, got ({s},{t})")
    ds, dt = spec.shift
    S, T = s + ds, t + dt
    f = spec.family
    if f == Family.GenericDoubleSymbolic:
        return v(S, T)
    if f == Family.StirlingSecond:
        return SymPoly.const(S)
    if f == Family.StirlingFirst:
        return SymPoly.const(1 - S - T)
    if f in (Family.QStirlingSecond, Family.QStirlingFirst):
        q = spec.param("q")
        q = q_sym() if q is None else q
        if f == Family.QStirlingSecond:
            return _qint(S, q)  # (1 - q^S) / (1 - q)
        return -_qint(S + T - 1, q)  # (q^(S+T-1) - 1) / (1 - q)
    if f == Family.CustomTable and spec.param("v") is not None:
        return _table_value(spec.param("v"), (S, T), "v")
    return spec.one()


def big_weight(spec: WeightSpec, s: int, t: int):
    """W(s,t) = prod_{j=1}^t w(s,j); the empty product for t = 0 is 1."""
    if s < 1 or t < 0:
        raise ValueError(f"big weights need s >= 1, t >= 0, got ({s},{t})")
    result = spec.one()
    for j in range(1, t + 1):
        result = result * small_weight(spec, s, j)
    return result


def big_weight_closed(spec: WeightSpec, s: int, t: int) -> complex:
    """Telescoped product form of W(s,t) for the (a,b)-parametrised families."""
    if spec.shift != (0, 0):
        return big_weight_closed(absorb_shift(spec), s, t)
    S = s
    f = spec.family
    if t == 0:
        return 1 + 0j
    if f == Family.Elliptic:
        aa, bb, q, p = (spec.param(k) for k in "abqp")
        num = [aa * q ** (S + 2 * t), bb * q ** (2 * S), bb * q ** (2 * S - 1),
               aa * q ** (1 - S) / bb, aa * q ** (-S) / bb]
        den = [aa * q ** S, bb * q ** (2 * S + t), bb * q ** (2 * S + t - 1),
               aa * q ** (1 + t - S) / bb, aa * q ** (t - S) / bb]
        r = 1 + 0j
        for x in num:
            r *= theta(x, p)
        for x in den:
            r /= checked_den(theta(x, p))
        return r * q ** t
    if f == Family.BalancedVWP:
        aa, bb, q = (spec.param(k) for k in "abq")
        num = [aa * q ** (S + 2 * t), bb * q ** (2 * S), bb * q ** (2 * S - 1),
               aa * q ** (1 - S) / bb, aa * q ** (-S) / bb]
        den = [aa * q ** S, bb * q ** (2 * S + t), bb * q ** (2 * S + t - 1),
               aa * q ** (1 + t - S) / bb, aa * q ** (t - S) / bb]
        r = 1 + 0j
        for x in num:
            r *= 1 - x
        for x in den:
            r /= _den(1 - x)
        return r * q ** t
    if f == Family.Balanced:
        bb, q = spec.param("b"), spec.param("q")
        return ((1 - bb * q ** (2 * S)) * (1 - bb * q ** (2 * S - 1))
                / (_den(1 - bb * q ** (2 * S + t)) * _den(1 - bb * q ** (2 * S + t - 1))) * q ** t)
    if f == Family.VWP:
        aa, q = spec.param("a"), spec.param("q")
        return (1 - aa * q ** (S + 2 * t)) / _den(1 - aa * q ** S) * q ** (-t)
    raise ValueError(f"no closed big-weight form for {f.value}")


# -- JSON ------------------------------------------------------------------

def _enc(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, SymPoly):
        return str(x)
    if isinstance(x, tuple):
        return [_enc(y) for y in x]
    return x


def spec_to_json(spec: WeightSpec) -> dict:
    params = {}
    for k, val in spec.params:
        if k in ("w", "v"):
            params[k] = [[s, t, _enc(x)] for (s, t), x in val]
        elif k == "numeric":
            continue
        else:
            params[k] = _enc(val)
    return {"family": spec.family.value, "params": params, "shift": list(spec.shift)}


def _dec_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        re_, im_ = x
        return complex(float(re_), float(im_))
    return complex(x)


def spec_from_json(data: dict) -> WeightSpec:
    family = Family(data["family"])
    raw = data.get("params", {})
    if family == Family.CustomTable:
        def dec(x):
            return SymPoly.parse(x) if isinstance(x, str) else _dec_complex(x)
        wt = {(s, t): dec(x) for s, t, x in raw["w"]}
        vt = None if "v" not in raw else {(s, t): dec(x) for s, t, x in raw["v"]}
        spec = custom_table(wt, vt)
    else:
        params = {}
        for k, x in raw.items():
            if k == "a" and family in (Family.CompleteSym, Family.ElementarySym):
                params[k] = tuple(_dec_complex(y) for y in x)
            else:
                params[k] = _dec_complex(x)
        spec = WeightSpec(family, _params(**params))
    ds, dt = data.get("shift", (0, 0))
    return shift_spec(spec, int(ds), int(dt))
