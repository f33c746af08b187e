"""Words and canonical-form elements of C_w[x,y] and C_{v,w}[x,y].

Elements are kept with *formal* coefficients: exact polynomials in the
indeterminates w(s,t) and v(s,t).  Only formal coefficients can be shifted
(``x c = (c shifted by (1,0)) x``), so all algebra happens formally and a
:class:`~wbinom.weights.WeightSpec` is applied at the end by
:func:`specialize`.

Defining relations::

    y x      = w(1,1) x y
    x w(s,t) = w(s+1,t) x       x v(s,t) = v(s+1,t) x
    y w(s,t) = w(s,t+1) y       y v(s,t) = v(s,t+1) y
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .coeffs import (ONE, Indeterminate, Kind, SymPoly, monomial_mul, v_ind,
                     w_ind)
from .weights import (Family, WeightSpec, big_weight, generic, small_weight,
                      small_weight_v)

X = "x"
Y = "y"


@dataclass(frozen=True)
class WeightFactor:
    """A weight monomial standing inside a word (w/v indeterminates only)."""

    monomial: tuple

    def __post_init__(self):
        for ind, _ in self.monomial:
            if ind.kind not in (Kind.W, Kind.V):
                raise ValueError(f"weight factors carry only w/v indeterminates, got {ind}")

    def shifted(self, ds: int, dt: int) -> "WeightFactor":
        return WeightFactor(tuple(sorted((ind.shifted(ds, dt), e) for ind, e in self.monomial)))

    def poly(self) -> SymPoly:
        return SymPoly.monomial(self.monomial)

    def __str__(self):
        return "*".join(str(ind) if e == 1 else f"{ind}^{e}" for ind, e in self.monomial) or "1"


def wf(kind: str, s: int, t: int) -> WeightFactor:
    ind = w_ind(s, t) if kind == "w" else v_ind(s, t)
    return WeightFactor(((ind, 1),))


_WORD_TOKEN = re.compile(r"\s*(x|y|([wv])\(\s*(\d+)\s*,\s*(\d+)\s*\))")


def parse_word(text: str) -> tuple:
    """Parse ``"x x y w(1,2) x"`` into a word (tuple of atoms)."""
    atoms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad word token near {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1) in (X, Y):
            atoms.append(m.group(1))
        else:
            atoms.append(wf(m.group(2), int(m.group(3)), int(m.group(4))))
    return tuple(atoms)


def word_str(word) -> str:
    return " ".join(str(atom) for atom in word)


class NCElement:
    """Finite sum of c_{k,l} x^k y^l with coefficients on the left."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for (k, l), c in (terms or {}).items():
            if k < 0 or l < 0:
                raise ValueError("generator exponents must be nonnegative")
            if _nonzero(c):
                clean[(k, l)] = c
        self._terms = clean

    @classmethod
    def one(cls) -> "NCElement":
        return cls({(0, 0): ONE})

    @classmethod
    def x(cls) -> "NCElement":
        return cls({(1, 0): ONE})

    @classmethod
    def y(cls) -> "NCElement":
        return cls({(0, 1): ONE})

    @classmethod
    def monomial(cls, k: int, l: int, coeff=ONE) -> "NCElement":
        return cls({(k, l): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coeff(self, k: int, l: int):
        return self._terms.get((k, l), 0)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (-kv[0][0], kv[0][1]))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, NCElement):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "NCElement") -> "NCElement":
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out[key] + c if key in out else c
        return NCElement(out)

    def __mul__(self, other: "NCElement") -> "NCElement":
        return multiply(self, other)

    def __str__(self):
        if not self._terms:
            return "0"
        return "\n".join(_term_str(k, l, c) for (k, l), c in self.items())

    def __repr__(self):
        return f"NCElement({self._terms!r})"

    def to_json(self) -> list:
        return [{"k": k, "l": l, "coeff": _coeff_json(c)} for (k, l), c in self.items()]


def _nonzero(c) -> bool:
    if isinstance(c, SymPoly):
        return not c.is_zero()
    return c != 0


def _coeff_json(c):
    if isinstance(c, SymPoly):
        return c.to_json()
    c = complex(c)
    return [c.real, c.imag]


def _term_str(k: int, l: int, c) -> str:
    gens = []
    if k:
        gens.append("x" if k == 1 else f"x^{k}")
    if l:
        gens.append("y" if l == 1 else f"y^{l}")
    mono = " ".join(gens)
    if isinstance(c, SymPoly):
        cs = str(c)
        if c == 1 and mono:
            return mono
        if len(c) > 1:
            cs = f"({cs})"
    else:
        cs = f"({complex(c):.15g})"
    return f"{cs} {mono}".strip()


# -- formal machinery ------------------------------------------------------

def formal_big_weight(s: int, t: int) -> SymPoly:
    """W(s,t) = w(s,1) ... w(s,t) over the generic indeterminates."""
    return SymPoly.monomial(tuple((w_ind(s, j), 1) for j in range(1, t + 1)))


def _shift_coeff(c, ds: int, dt: int):
    return c.shift_wv(ds, dt) if isinstance(c, SymPoly) else c


def _formal_multiply(a: NCElement, b: NCElement) -> NCElement:
    out: dict = {}
    for (ka, la), ca in a._terms.items():
        for (kb, lb), cb in b._terms.items():
            # x^ka y^la cb = (cb shifted by (ka, la)) x^ka y^la, then
            # y^la x^kb = prod_i W(i, la) x^kb y^la, moved left past x^ka
            factor = SymPoly.monomial(tuple(sorted(
                (w_ind(i + ka, j), 1) for i in range(1, kb + 1) for j in range(1, la + 1))))
            c = ca * _shift_coeff(cb, ka, la) * factor
            key = (ka + kb, la + lb)
            out[key] = out[key] + c if key in out else c
    return NCElement(out)


def specialize_coeff(c, spec: WeightSpec):
    if not isinstance(c, SymPoly):
        return c
    if spec.family == Family.GenericSymbolic and spec.shift == (0, 0):
        return c
    symbolic = spec.is_symbolic

    def value(ind: Indeterminate):
        if ind.kind == Kind.W:
            return small_weight(spec, ind.index1, ind.index2)
        if ind.kind == Kind.V:
            return small_weight_v(spec, ind.index1, ind.index2)
        if symbolic:
            return SymPoly.var(ind)
        raise KeyError(ind)

    return c.evaluate(value, one=spec.one())


def specialize(element: NCElement, spec: WeightSpec) -> NCElement:
    """Map formal coefficients through the weights of ``spec``."""
    return NCElement({key: specialize_coeff(c, spec) for key, c in element._terms.items()})


# -- public operations -----------------------------------------------------

def normalize(word, spec: WeightSpec | None = None) -> NCElement:
    """Canonical form of a word in one left-to-right pass.

    A weight factor with alpha x's and beta y's to its left moves to the
    front as its (alpha, beta)-shift; each x closing a horizontal step at
    (s, t) contributes W(s, t) (the lattice-path weight of the word).
    """
    if isinstance(word, str):
        word = parse_word(word)
    mono: tuple = ()
    alpha = beta = 0
    for atom in word:
        if atom == X:
            alpha += 1
            mono = monomial_mul(mono, tuple((w_ind(alpha, j), 1) for j in range(1, beta + 1)))
        elif atom == Y:
            beta += 1
        elif isinstance(atom, WeightFactor):
            mono = monomial_mul(mono, atom.shifted(alpha, beta).monomial)
        else:
            raise ValueError(f"unknown atom {atom!r}")
    result = NCElement({(alpha, beta): SymPoly.monomial(mono)})
    return result if spec is None else specialize(result, spec)


def multiply(a: NCElement, b: NCElement, spec: WeightSpec | None = None) -> NCElement:
    """Product of two formal elements, optionally specialized to ``spec``."""
    result = _formal_multiply(a, b)
    return result if spec is None else specialize(result, spec)


def binomial_base(double: bool = False) -> NCElement:
    if double:
        return NCElement({(1, 0): ONE, (0, 1): SymPoly.var(v_ind(0, 1))})
    return NCElement({(1, 0): ONE, (0, 1): ONE})


@lru_cache(maxsize=None)
def _formal_power(n: int, double: bool) -> NCElement:
    if n == 0:
        return NCElement.one()
    return _formal_multiply(_formal_power(n - 1, double), binomial_base(double))


def binomial_power(n: int, spec: WeightSpec | None = None) -> NCElement:
    """(x + y)^n, or (x + v(0,1) y)^n for double-weight specs."""
    if n < 0:
        raise ValueError("n must be >= 0")
    spec = spec or generic()
    return specialize(_formal_power(n, spec.is_double), spec)


def commute_yx(k: int, l: int, spec: WeightSpec | None = None):
    """Coefficient in y^k x^l = (prod_{i=1}^l W(i,k)) x^l y^k."""
    if k < 0 or l < 0:
        raise ValueError("k, l must be >= 0")
    spec = spec or generic()
    result = spec.one()
    for i in range(1, l + 1):
        result = result * big_weight(spec, i, k)
    return result


# -- naive rewriting oracle ------------------------------------------------

NAIVE_MAX_LEN = 8


def redexes(word) -> list[int]:
    """Positions i where some relation rewrites the pair (word[i], word[i+1])."""
    out = []
    for i in range(len(word) - 1):
        l, r = word[i], word[i + 1]
        if (l == Y and r == X) or (l in (X, Y) and isinstance(r, WeightFactor)) \
                or (isinstance(l, WeightFactor) and isinstance(r, WeightFactor)):
            out.append(i)
    return out


def rewrite_at(word, i: int) -> tuple:
    l, r = word[i], word[i + 1]
    if l == Y and r == X:
        new = (wf("w", 1, 1), X, Y)
    elif l == X and isinstance(r, WeightFactor):
        new = (r.shifted(1, 0), X)
    elif l == Y and isinstance(r, WeightFactor):
        new = (r.shifted(0, 1), Y)
    elif isinstance(l, WeightFactor) and isinstance(r, WeightFactor):
        new = (WeightFactor(monomial_mul(l.monomial, r.monomial)),)
    else:
        raise ValueError(f"no relation applies at position {i}")
    return tuple(word[:i]) + new + tuple(word[i + 2:])


def normalize_naive(word, max_len: int = NAIVE_MAX_LEN) -> NCElement:
    """Exhaustive leftmost rewriting with the defining relations (oracle)."""
    if isinstance(word, str):
        word = parse_word(word)
    word = tuple(word)
    if len(word) > max_len:
        raise ValueError(f"naive rewriter is limited to words of length <= {max_len}")
    while True:
        pos = redexes(word)
        if not pos:
            break
        word = rewrite_at(word, pos[0])
    coeff = ONE
    if word and isinstance(word[0], WeightFactor):
        coeff = word[0].poly()
        word = word[1:]
    k = sum(1 for atom in word if atom == X)
    l = len(word) - k
    if tuple(word) != (X,) * k + (Y,) * l:
        raise AssertionError(f"rewriting stopped in a non-canonical word {word_str(word)}")
    return NCElement({(k, l): coeff})
