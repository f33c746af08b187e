"""Commutative coefficient domains.

Two interchangeable domains back every other module:

* ``SymPoly`` -- exact sparse (Laurent) polynomials with rational
  coefficients in indexed indeterminates ``w(s,t)``, ``v(s,t)``, ``a(t)``
  and ``q``;
* plain Python ``complex`` numbers (double precision).

Values of both kinds are immutable.  Monomials are tuples of
``(Indeterminate, exponent)`` pairs sorted by ``(kind, index1, index2)``,
so structural equality is mathematical equality.
"""
from __future__ import annotations

import json
import re
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from operator import itemgetter
from typing import Callable, Iterable, Mapping, NamedTuple, Union

from .errors import MissingAssignment


class Kind(IntEnum):
    W = 0
    V = 1
    A = 2
    Q = 3


class Indeterminate(NamedTuple):
    kind: Kind
    index1: int = 0
    index2: int = 0

    def __str__(self):
        if self.kind == Kind.W:
            return f"w({self.index1},{self.index2})"
        if self.kind == Kind.V:
            return f"v({self.index1},{self.index2})"
        if self.kind == Kind.A:
            return f"a({self.index1})"
        return "q"

    def shifted(self, ds: int, dt: int) -> "Indeterminate":
        return Indeterminate(self.kind, self.index1 + ds, self.index2 + dt)


@lru_cache(maxsize=65536)
def w_ind(s: int, t: int) -> Indeterminate:
    if s < 1 or t < 1:
        raise ValueError(f"w({s},{t}) needs s >= 1 and t >= 1")
    return Indeterminate(Kind.W, s, t)


@lru_cache(maxsize=65536)
def v_ind(s: int, t: int) -> Indeterminate:
    # v(0,1) occurs in the double binomial theorem, so s = 0 is allowed
    if s < 0 or t < 1:
        raise ValueError(f"v({s},{t}) needs s >= 0 and t >= 1")
    return Indeterminate(Kind.V, s, t)


def a_ind(t: int) -> Indeterminate:
    if t < 0:
        raise ValueError(f"a({t}) needs t >= 0")
    return Indeterminate(Kind.A, t, 0)


Q_IND = Indeterminate(Kind.Q)

Monomial = tuple  # tuple[tuple[Indeterminate, int], ...]
ONE_MONOMIAL: Monomial = ()


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    if m1[-1][0] < m2[0][0]:
        return m1 + m2
    if m2[-1][0] < m1[0][0]:
        return m2 + m1
    exps = dict(m1)
    for ind, e in m2:
        e2 = exps.get(ind, 0) + e
        if e2:
            exps[ind] = e2
        else:
            del exps[ind]
    # dict order is two sorted runs, which timsort merges in linear time
    return tuple(sorted(exps.items(), key=itemgetter(0)))


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Monomial):
    return (sum(abs(e) for _, e in m), m)


def _as_fraction(c) -> Fraction | int:
    # integral values stay plain ints: int arithmetic is far cheaper than Fraction
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


class SymPoly:
    """Sparse Laurent polynomial over Q in indexed indeterminates."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SymPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "SymPoly":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def var(cls, ind: Indeterminate, exp: int = 1) -> "SymPoly":
        return cls({((ind, exp),): 1}) if exp else cls.const(1)

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "SymPoly":
        return cls({m: c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _mono_key(kv[0]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def indeterminates(self) -> set:
        return {ind for m in self._terms for ind, _ in m}

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, SymPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SymPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "SymPoly":
        """Inverse of a single-term polynomial (a unit of the Laurent ring)."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        (m, c), = self._terms.items()
        return SymPoly._raw({tuple((ind, -e) for ind, e in m): _as_fraction(1 / Fraction(c))})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_mul(other, self.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = SymPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SymPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == SymPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- index manipulation ------------------------------------------------

    def rename(self, fn: Callable[[Indeterminate], Indeterminate]) -> "SymPoly":
        out: dict = {}
        for m, c in self._terms.items():
            m2 = tuple(sorted((fn(ind), e) for ind, e in m))
            out[m2] = out.get(m2, 0) + c
        return SymPoly(out)

    def shift_wv(self, ds: int, dt: int) -> "SymPoly":
        """Relabel w(s,t) -> w(s+ds,t+dt) and v(s,t) -> v(s+ds,t+dt)."""
        if ds == 0 and dt == 0:
            return self
        return self.rename(
            lambda ind: ind.shifted(ds, dt) if ind.kind in (Kind.W, Kind.V) else ind)

    def evaluate(self, value_of: Callable[[Indeterminate], object] | Mapping, one=1):
        """Substitute every indeterminate and sum in the target ring.

        ``value_of`` maps an indeterminate to a value supporting ``+``, ``*``
        and integer powers (``complex`` or ``SymPoly``).
        """
        lookup = value_of.__getitem__ if isinstance(value_of, Mapping) else value_of
        cache: dict = {}

        def val(ind):
            if ind not in cache:
                try:
                    cache[ind] = lookup(ind)
                except KeyError:
                    raise MissingAssignment(ind) from None
            return cache[ind]

        total = 0 * one
        for m, c in self._terms.items():
            term = one * c
            for ind, e in m:
                term = term * val(ind) ** e
            total = total + term
        return total

    # -- text / json -------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors = [str(ind) if e == 1 else f"{ind}^{e}" for ind, e in m]
            if not factors:
                body = _fmt_fraction(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _fmt_fraction(mag) + "*" + "*".join(factors)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"SymPoly({str(self)!r})"

    def to_json(self) -> list:
        return [
            {
                "monomial": [[ind.kind.name.lower(), ind.index1, ind.index2, e] for ind, e in m],
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
            for m, c in self.items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "SymPoly":
        terms: dict = {}
        for entry in data:
            m = tuple(sorted(
                (Indeterminate(Kind[k.upper()], int(s), int(t)), int(e))
                for k, s, t, e in entry["monomial"]))
            terms[m] = terms.get(m, 0) + Fraction(int(entry["num"]), int(entry["den"]))
        return cls(terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def parse(cls, text: str) -> "SymPoly":
        return _Parser(text).parse()


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_add(a: SymPoly, b: SymPoly) -> SymPoly:
    if len(a._terms) < len(b._terms):
        a, b = b, a
    out = dict(a._terms)
    for m, c in b._terms.items():
        c2 = out.get(m, 0) + c
        if c2:
            out[m] = c2
        else:
            out.pop(m, None)
    return SymPoly._raw(out)


def poly_sum(polys: Iterable) -> SymPoly:
    """Sum of many polynomials with a single accumulator (linear, not quadratic)."""
    out: dict = {}
    for p in polys:
        p = SymPoly._coerce(p)
        for m, c in p._terms.items():
            out[m] = out.get(m, 0) + c
    return SymPoly._raw({m: c for m, c in out.items() if c})


def poly_mul(a: SymPoly, b: SymPoly) -> SymPoly:
    out: dict = {}
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            m = monomial_mul(m1, m2)
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return SymPoly._raw(out)


def poly_substitute(p: SymPoly, assignment: Mapping[Indeterminate, complex]) -> complex:
    """Evaluate ``p`` numerically; every occurring indeterminate must be assigned."""
    total = 0j
    for m, c in p._terms.items():
        term = complex(float(c))
        for ind, e in m:
            try:
                x = assignment[ind]
            except KeyError:
                raise MissingAssignment(ind) from None
            term *= complex(x) ** e
        total += term
    return total


# -- numeric helpers -------------------------------------------------------

Coefficient = Union[SymPoly, complex]


def is_exact(c) -> bool:
    return isinstance(c, SymPoly)


def rel_err(x, y) -> float:
    """|x - y| / max(|y|, tiny); exact zero when both are equal SymPolys."""
    if isinstance(x, SymPoly) or isinstance(y, SymPoly):
        x = _to_complex(x)
        y = _to_complex(y)
    d = abs(complex(x) - complex(y))
    if d == 0:
        return 0.0
    return d / max(abs(complex(y)), 1e-300)


def _to_complex(c) -> complex:
    if isinstance(c, SymPoly):
        if not c.is_constant():
            raise TypeError(f"{c} is not a numeric constant")
        return complex(float(c.constant_term()))
    return complex(c)


def residual_magnitude(r) -> float | str:
    """Report form of a residual: ``"exact-zero"``, or a magnitude.

    A nonzero symbolic residual is measured by the sum of the absolute values
    of its coefficients, so it is always a finite positive number.
    """
    if isinstance(r, SymPoly):
        if r.is_zero():
            return "exact-zero"
        return float(sum(abs(c) for c in r._terms.values()))
    if isinstance(r, (int, Fraction)) and r == 0:
        return "exact-zero"
    return abs(complex(r))


# -- canonical text parser -------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ind>[wv]\(\s*-?\d+\s*,\s*-?\d+\s*\)|a\(\s*-?\d+\s*\)|q)"
                    r"|(?P<op>[-+*^]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
            pos = m.end()
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> SymPoly:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        total = SymPoly()
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        while True:
            total = total + sign * self.term()
            kind, val = self.peek()
            if kind is None:
                return total
            if kind != "op" or val not in "+-":
                raise ValueError(f"unexpected token {val!r}")
            self.take()
            sign = 1 if val == "+" else -1

    def term(self) -> SymPoly:
        result = SymPoly.const(1)
        while True:
            kind, val = self.take()
            if kind == "num":
                result = result * Fraction(val)
            elif kind == "ind":
                ind = _parse_ind(val)
                exp = 1
                if self.peek() == ("op", "^"):
                    self.take()
                    esign = 1
                    if self.peek() == ("op", "-"):
                        self.take()
                        esign = -1
                    k2, v2 = self.take()
                    if k2 != "num":
                        raise ValueError("exponent expected after '^'")
                    exp = esign * int(v2)
                result = result * SymPoly.var(ind, exp)
            else:
                raise ValueError(f"unexpected token {val!r}")
            if self.peek() == ("op", "*"):
                self.take()
                continue
            return result


def _parse_ind(text: str) -> Indeterminate:
    text = text.replace(" ", "")
    if text == "q":
        return Q_IND
    nums = [int(x) for x in re.findall(r"-?\d+", text)]
    if text[0] == "w":
        return Indeterminate(Kind.W, *nums)
    if text[0] == "v":
        return Indeterminate(Kind.V, *nums)
    return Indeterminate(Kind.A, nums[0], 0)


def w(s: int, t: int) -> SymPoly:
    return SymPoly.var(w_ind(s, t))


def v(s: int, t: int) -> SymPoly:
    return SymPoly.var(v_ind(s, t))


def a(t: int) -> SymPoly:
    return SymPoly.var(a_ind(t))


def q_sym() -> SymPoly:
    return SymPoly.var(Q_IND)


ZERO = SymPoly()
ONE = SymPoly.const(1)
