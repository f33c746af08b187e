"""Named identity checks behind ``wbinom verify`` and ``wbinom report``.

Every identity is one :class:`Identity` row in :data:`REGISTRY`.  Exact
identities map each index case to a symbolic residual; randomized ones draw
parameters with a per-identity RNG, reject degenerate or ill-conditioned
draws, and take the maximum residual over every case and every trial.
"""
from __future__ import annotations

import cmath
import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .binomial import (BCase, family_binom_closed, binom_for, closed_form,
                       convolution_check, elliptic_binom_closed, gaussian_binomial,
                       recursion_condition, vwbinom, wbinom)
from .coeffs import SymPoly, residual_magnitude
from .elliptic import (V109Params, Variant, draw_until_regular, jackson_8phi7_sides,
                       random_complex, random_nome, theta_addition_residual,
                       v109_convolution_terms, v109_sides, v109_terms)
from .errors import IllConditioned
from .ncalgebra import (NCElement, X, Y, binomial_power, commute_yx, normalize,
                        normalize_naive, wf)
from .paths import decompose_check, generating_function
from .symmetric import (SymIdentity, admissible, bridge_check, sym_binom_check,
                        sym_identity_check)
from .theta import qp_factorial, theta
from .weights import (balanced, balanced_vwp, elliptic, generic, generic_double,
                      stirling_first, stirling_second, vwp)

COND_MAX = 1e6

SYMBOLIC_SPECS = {"generic": generic, "generic-double": generic_double}


@dataclass(frozen=True)
class Sizes:
    """Optional size overrides; ``None`` means the identity's full default sweep."""

    n: int | None = None
    m: int | None = None
    k: int | None = None
    l: int | None = None

    def given(self) -> dict:
        return {k: v for k, v in vars(self).items() if v is not None}


@dataclass(frozen=True)
class Identity:
    name: str
    criterion: int
    summary: str
    cases: Callable[[Sizes], list]
    residual: Callable
    draw: Callable | None = None
    trials: int = 1
    tol: float | None = None
    defaults: dict = field(default_factory=dict)

    @property
    def randomized(self) -> bool:
        return self.draw is not None


@dataclass
class Result:
    identity: str
    params: dict
    trials: int
    max_residual: float | str
    passed: bool
    millis: int = 0

    def to_json(self) -> dict:
        return {"identity": self.identity, "params": self.params, "trials": self.trials,
                "max_residual": self.max_residual, "pass": self.passed, "millis": self.millis}


# -- sweep helpers ---------------------------------------------------------

def _pick(value, default_range):
    return [value] if value is not None else list(default_range)


def _n_cases(n_max, n_min=0):
    def cases(sz: Sizes):
        return [(n,) for n in _pick(sz.n, range(n_min, n_max + 1))]
    return cases


def _nk_cases(n_max):
    def cases(sz: Sizes):
        return [(n, k) for n in _pick(sz.n, range(n_max + 1)) for k in _pick(sz.k, range(n + 1))
                if 0 <= k <= n]
    return cases


def _fixed_index(sz: Sizes, which: str):
    """The k-or-l override relevant to a variant."""
    return sz.l if which == "vertical" else sz.k


def _conv_admissible(which: str, n: int, m: int):
    if which == "diagonal":
        return range(0, n + m + 1)
    if which == "vertical":
        return range(1, n + 1)
    return range(1, m + 1)


def _conv_cases(which, sizes_ok, specs=None):
    def cases(sz: Sizes):
        out = []
        for n in _pick(sz.n, range(0, 9)):
            for m in _pick(sz.m, range(0, 9)):
                if not sizes_ok(n, m):
                    continue
                for kl in _pick(_fixed_index(sz, which), _conv_admissible(which, n, m)):
                    if kl not in _conv_admissible(which, n, m) or not sizes_ok(n, m, kl):
                        continue
                    if specs is None:
                        out.append((n, m, kl))
                    else:
                        out.extend((name, n, m, kl) for name in specs)
        return out
    return cases


# -- exact residuals -------------------------------------------------------

def _first_nonzero(residuals):
    for r in residuals:
        if residual_magnitude(r) != "exact-zero":
            return r
    return 0


def _binomial_theorem(spec_name):
    def residual(case):
        (n,) = case
        spec = SYMBOLIC_SPECS[spec_name]()
        power = binomial_power(n, spec)
        out = [power.coeff(k, n - k) - binom_for(spec, n, k) for k in range(n + 1)]
        out += [c for (k, l), c in power.terms.items() if k + l != n]
        return _first_nonzero(out)
    return residual


def _path_oracle(case):
    name, n, k = case
    spec = SYMBOLIC_SPECS[name]()
    return generating_function((0, 0), (k, n - k), spec) - binom_for(spec, n, k)


def _commute(case):
    k, l = case
    el = normalize((Y,) * k + (X,) * l)
    if set(el.terms) != {(l, k)}:
        return SymPoly.const(1)
    return el.coeff(l, k) - commute_yx(k, l)


NAIVE_ALPHABETS = ((8, (X, Y, wf("w", 1, 1))), (6, (X, Y, wf("w", 1, 1), wf("v", 1, 2))))


def _naive_cases(sz: Sizes):
    out = []
    for max_len, alphabet in NAIVE_ALPHABETS:
        if sz.n is not None:
            max_len = min(max_len, sz.n)
        for length in range(max_len + 1):
            out.extend(itertools.product(alphabet, repeat=length))
    return sorted(set(out), key=lambda w: (len(w), [str(a) for a in w]))


def _naive(case):
    fast, slow = normalize(case), normalize_naive(case)
    if fast == slow:
        return 0
    return SymPoly.const(1)


def _convolution(which):
    def residual(case):
        name, n, m, kl = case
        return convolution_check(which, SYMBOLIC_SPECS[name](), n, m, kl)
    return residual


def _decomposition(which):
    def residual(case):
        name, n, m, kl = case
        return decompose_check(which, SYMBOLIC_SPECS[name](), n, m, kl)
    return residual


def _box8(n, m, kl=None, which=None):
    return n <= 8 and m <= 8


def _diag_box8(n, m, kl=None):
    if kl is None:
        return n <= 8 and m <= 8
    return kl <= 8 and n + m - kl <= 8


def _small_total(n, m, kl=None):
    return n + m <= 7


def _sym_binom(family):
    def residual(case):
        (n,) = case
        return sym_binom_check(family, n)
    return residual


def _sym_cases(which):
    def cases(sz: Sizes):
        out = []
        for n in _pick(sz.n, range(0, 7)):
            for m in _pick(sz.m, range(0, 7)):
                fixed = sz.l if which in (SymIdentity.H2, SymIdentity.E1) else sz.k
                for kl in _pick(fixed, admissible(which, n, m)):
                    if kl in admissible(which, n, m):
                        out.append((n, m, kl))
        return out
    return cases


def _sym_identity(which):
    def residual(case):
        return sym_identity_check(which, *case)
    return residual


def _bridge(family):
    def residual(case):
        return bridge_check(family, *case)
    return residual


def set_partition_counts(n: int) -> list[int]:
    """Number of set partitions of {1..n} into k blocks, by enumeration."""
    counts = [0] * (n + 1)

    def place(i: int, blocks: int):
        if i == n:
            counts[blocks] += 1
            return
        for _ in range(blocks):  # element i joins an existing block
            place(i + 1, blocks)
        place(i + 1, blocks + 1)

    place(0, 0)
    return counts


def signed_cycle_counts(n: int) -> list[int]:
    """(-1)^(n-k) times the number of permutations of n letters with k cycles."""
    counts = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        seen = [False] * n
        cycles = 0
        for i in range(n):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        counts[cycles] += 1
    return [(-1) ** (n - k) * c for k, c in enumerate(counts)]


def _stirling(kind):
    def residual(case):
        (n,) = case
        spec = stirling_second() if kind == 2 else stirling_first()
        expected = set_partition_counts(n) if kind == 2 else signed_cycle_counts(n)
        return _first_nonzero([vwbinom(spec, n, k) - expected[k] for k in range(n + 1)])
    return residual


# -- randomized residuals --------------------------------------------------

def _rel(x, y) -> float:
    scale = abs(y)
    return abs(x - y) / scale if scale else abs(x - y)


def _guard(kappa: float):
    if not kappa <= COND_MAX:
        raise IllConditioned(f"condition estimate {kappa:.3g} exceeds {COND_MAX:g}")


def _draw_abqp(rng):
    return {"a": random_complex(rng), "b": random_complex(rng), "q": random_complex(rng),
            "p": random_nome(rng)}


def _draw_abcdqp(rng):
    d = {k: random_complex(rng) for k in "abcdq"}
    d["p"] = random_nome(rng)
    return d


def _elliptic_spec(P):
    return elliptic(P["a"], P["b"], P["q"], P["p"])


def _closed_vs_recursion(make_spec):
    def prepare(P, cases):
        spec = make_spec(P)
        _guard(recursion_condition(spec, max(n for n, _ in cases)))

    def residual(P, case):
        n, k = case
        spec = make_spec(P)
        return _rel(complex(wbinom(spec, n, k)), closed_form(spec, n, k))
    return prepare, residual


def _elliptic_border(P, case):
    (n,) = case
    a, b, q, p = P["a"], P["b"], P["q"], P["p"]
    spec = _elliptic_spec(P)
    values = [elliptic_binom_closed(a, b, q, p, n, 0) - 1, elliptic_binom_closed(a, b, q, p, n, n) - 1,
              elliptic_binom_closed(a, b, q, p, n, -1), elliptic_binom_closed(a, b, q, p, n, n + 1),
              complex(wbinom(spec, n, 0)) - 1, complex(wbinom(spec, n, n)) - 1]
    return max(abs(v) for v in values)


def _elliptic_pshift(P, case):
    n, k = case
    a, b, q, p = P["a"], P["b"], P["q"], P["p"]
    base = elliptic_binom_closed(a, b, q, p, n, k)
    return max(_rel(elliptic_binom_closed(p * a, b, q, p, n, k), base),
               _rel(elliptic_binom_closed(a, p * b, q, p, n, k), base))


def _v109(P, case):
    (n,) = case
    params = V109Params.balanced(P["a"], P["b"], P["c"], P["d"], P["q"], P["p"], n)
    lhs, rhs = v109_sides(params)
    _guard(sum(abs(t) for t in v109_terms(params)) / abs(lhs) if lhs else math.inf)
    return _rel(lhs, rhs)


def _jackson(P, case):
    (n,) = case
    a, b, c, d, q = (P[k] for k in "abcdq")
    params = V109Params.balanced(a, b, c, d, q, 0, n)
    lhs, rhs = v109_sides(params)
    _guard(sum(abs(t) for t in v109_terms(params)) / abs(lhs) if lhs else math.inf)
    j_lhs, j_rhs = jackson_8phi7_sides(a, b, c, d, q, n)
    return max(_rel(j_lhs, j_rhs), _rel(lhs, j_rhs), _rel(rhs, j_rhs))


def _v109_conv(variant):
    def residual(P, case):
        n, m, kl = case
        lhs, terms = v109_convolution_terms(variant, P["a"], P["b"], P["q"], P["p"], n, m, kl)
        _guard(sum(abs(t) for t in terms) / abs(lhs) if lhs else math.inf)
        return _rel(sum(terms, 0j), lhs)
    return residual


def _v109_conv_cases(variant):
    def cases(sz: Sizes):
        out = []
        for n in _pick(sz.n, range(0, 6)):
            for m in _pick(sz.m, range(0, 6)):
                allowed = _conv_admissible(variant, n, m)
                for kl in _pick(_fixed_index(sz, variant), allowed):
                    if kl in allowed:
                        out.append((n, m, kl))
        return out
    return cases


def _draw_theta(rng):
    return {"x": random_complex(rng), "p": random_nome(rng)}


def _theta_den_guard(*values):
    for v in values:
        if abs(v) < 1e-8:
            raise IllConditioned("theta value too close to a zero for a relative comparison")


def _theta_inversion(P, case):
    x, p = P["x"], P["p"]
    lhs = theta(x, p)
    _theta_den_guard(lhs)
    return _rel(-x * theta(1 / x, p), lhs)


def _theta_quasi(P, case):
    x, p = P["x"], P["p"]
    base = theta(x, p)
    _theta_den_guard(base)
    return _rel(theta(p * x, p), -base / x)


def _draw_addition(rng):
    return {k: random_complex(rng, 0.5, 2.0) for k in "xyuv"} | {"p": random_nome(rng)}


def _theta_addition(P, case):
    return theta_addition_residual(P["x"], P["y"], P["u"], P["v"], P["p"])


def _draw_qp(rng):
    return {"a": random_complex(rng), "q": random_complex(rng), "p": random_nome(rng)}


def _qp_pshift(P, case):
    (n,) = case
    a, q, p = P["a"], P["q"], P["p"]
    base = qp_factorial(a, q, p, n)
    _theta_den_guard(base)
    expected = (-1) ** n * a ** (-n) * q ** (-(n * (n - 1) // 2)) * base
    return _rel(qp_factorial(p * a, q, p, n), expected)


def _theta_p0(P, case):
    x = P["x"]
    return abs(theta(x, 0) - (1 - x))


def _draw_abq(rng):
    return {"a": random_complex(rng), "b": random_complex(rng), "q": random_complex(rng)}


def _draw_q(rng):
    return {"q": random_complex(rng)}


def _limit(which):
    def make(P):
        return balanced(0, P["q"]) if which == "balanced" else vwp(0, P["q"])

    def prepare(P, cases):
        _guard(recursion_condition(make(P), max(n for n, _ in cases)))

    def residual(P, case):
        n, k = case
        q = P["q"]
        expected = gaussian_binomial(q if which == "balanced" else 1 / q, n, k)
        return max(_rel(complex(wbinom(make(P), n, k)), expected),
                   _rel(family_binom_closed(which, {"q": q, "a": 0, "b": 0}, n, k), expected))
    return prepare, residual


# -- the registry ----------------------------------------------------------

def _exact(name, criterion, summary, cases, residual, **defaults):
    return Identity(name, criterion, summary, cases, residual, defaults=defaults)


def _randomized(name, criterion, summary, cases, residual, draw, trials, tol, prepare=None, **defaults):
    fn = residual if prepare is None else _Prepared(prepare, residual)
    return Identity(name, criterion, summary, cases, fn, draw, trials, tol, defaults)


@dataclass(frozen=True)
class _Prepared:
    """A residual with a once-per-draw guard."""

    prepare: Callable
    residual: Callable

    def __call__(self, P, case):
        return self.residual(P, case)


def _build() -> dict[str, Identity]:
    rows = [
        _exact("binomial-theorem", 1, "(x+y)^n against the recursion, generic weights",
               _n_cases(8), _binomial_theorem("generic"), n_max=8),
        _exact("binomial-theorem-double", 2, "(x+v(0,1)y)^n against the double recursion",
               _n_cases(7), _binomial_theorem("generic-double"), n_max=7),
        _exact("path-oracle", 3, "recursion = path generating function, single and double weights",
               lambda sz: [(name, n, k) for name in SYMBOLIC_SPECS for n, k in _nk_cases(8)(sz)],
               _path_oracle, n_max=8),
        _exact("commute-yx", 4, "normal form of y^k x^l", lambda sz: [
            (k, l) for k in _pick(sz.k, range(7)) for l in _pick(sz.l, range(7))], _commute, k_max=6, l_max=6),
        _exact("normalize-naive", 4, "one-pass normal form = exhaustive rewriting",
               _naive_cases, _naive, max_len=8),
    ]
    for which in ("diagonal", "vertical", "horizontal"):
        rows.append(_exact(f"convolution-{which}", 5, f"{which} convolution of the binomial coefficients",
                           _conv_cases(which, _small_total, SYMBOLIC_SPECS), _convolution(which),
                           n_plus_m_max=7))
        rows.append(_exact(f"path-decomposition-{which}", 5, f"{which} split of path generating functions",
                           _conv_cases(which, _diag_box8 if which == "diagonal" else _box8, SYMBOLIC_SPECS),
                           _decomposition(which), box=8))
    ell_prepare, ell_residual = _closed_vs_recursion(_elliptic_spec)
    rows += [
        _randomized("elliptic-closed-form", 6, "closed elliptic coefficient = recursion",
                    _nk_cases(10), ell_residual, _draw_abqp, 100, 1e-9, ell_prepare, n_max=10),
        _randomized("elliptic-border", 6, "border values 1 and 0 of the elliptic coefficient",
                    _n_cases(10), _elliptic_border, _draw_abqp, 100, 0.0, n_max=10),
        _randomized("elliptic-p-shift", 6, "invariance under a -> pa and b -> pb",
                    _nk_cases(10), _elliptic_pshift, _draw_abqp, 100, 1e-9, n_max=10),
        _randomized("v109", 7, "terminating balanced 10V9 summation",
                    _n_cases(8), _v109, _draw_abcdqp, 50, 1e-8, n_max=8),
        _randomized("jackson-8phi7", 7, "p = 0 branch against Jackson's sum",
                    _n_cases(8), _jackson, _draw_abcdqp, 50, 1e-10, n_max=8),
    ]
    for variant in ("diagonal", "vertical", "horizontal"):
        rows.append(_randomized(f"v109-convolution-{variant}", 8, f"{variant} elliptic convolution",
                                _v109_conv_cases(variant), _v109_conv(variant), _draw_abqp, 25, 1e-8,
                                n_max=5, m_max=5))
    one_case = lambda sz: [()]  # noqa: E731
    rows += [
        _randomized("theta-inversion", 9, "theta(x) = -x theta(1/x)", one_case, _theta_inversion,
                    _draw_theta, 200, 1e-11),
        _randomized("theta-quasi-period", 9, "theta(px) = -theta(x)/x", one_case, _theta_quasi,
                    _draw_theta, 200, 1e-11),
        _randomized("theta-addition", 9, "three-term addition formula", one_case, _theta_addition,
                    _draw_addition, 200, 1e-11),
        _randomized("qp-factorial-p-shift", 9, "(pa;q,p)_n in terms of (a;q,p)_n",
                    _n_cases(8), _qp_pshift, _draw_qp, 200, 1e-11, n_max=8),
        _randomized("theta-p0", 9, "theta(x;0) = 1 - x", one_case, _theta_p0, _draw_theta, 200, 1e-15),
    ]
    rows += [
        _exact("sym-binomial-h", 10, "binomial theorem with complete symmetric coefficients",
               _n_cases(6), _sym_binom("h"), n_max=6),
        _exact("sym-binomial-e", 10, "binomial theorem with elementary symmetric coefficients",
               _n_cases(6), _sym_binom("e"), n_max=6),
        _exact("bridge-h", 10, "h-labeling of the binomial coefficients", _nk_cases(8), _bridge("h"), n_max=8),
        _exact("bridge-e", 10, "e-labeling of the binomial coefficients", _nk_cases(8), _bridge("e"), n_max=8),
    ]
    for which in SymIdentity:
        rows.append(_exact(which.value, 10, f"symmetric-function convolution {which.value}",
                           _sym_cases(which), _sym_identity(which), n_max=6, m_max=6))
    for case, make in ((BCase.BalancedVWP, lambda P: balanced_vwp(P["a"], P["b"], P["q"])),
                       (BCase.Balanced, lambda P: balanced(P["b"], P["q"])),
                       (BCase.VWP, lambda P: vwp(P["a"], P["q"]))):
        prep, res = _closed_vs_recursion(make)
        rows.append(_randomized(f"product-{case.value}", 11, f"{case.value} closed form = recursion",
                                _nk_cases(10), res, _draw_abq, 100, 1e-9, prep, n_max=10))
    for which, label in (("balanced", "balanced-b0-limit"), ("vwp", "vwp-a0-limit")):
        prep, res = _limit(which)
        rows.append(_randomized(label, 11, f"{which} family at the degenerate parameter is a q-binomial",
                                _nk_cases(10), res, _draw_q, 100, 1e-12, prep, n_max=10))
    rows += [
        _exact("stirling-second", 12, "v(s,t) = s gives set-partition counts", _n_cases(8), _stirling(2), n_max=8),
        _exact("stirling-first", 12, "v(s,t) = 1-s-t gives signed cycle counts", _n_cases(8), _stirling(1), n_max=8),
    ]
    return {row.name: row for row in sorted(rows, key=lambda r: r.name)}


REGISTRY: dict[str, Identity] = _build()


def identity_names() -> list[str]:
    return sorted(REGISTRY)


# -- running ---------------------------------------------------------------

def _aggregate_exact(residuals) -> float | str:
    worst: float | str = "exact-zero"
    for r in residuals:
        mag = residual_magnitude(r)
        if mag != "exact-zero" and (worst == "exact-zero" or mag > worst):
            worst = mag
    return worst


def run_identity(name: str, sizes: Sizes = Sizes(), trials: int | None = None,
                 tol: float | None = None, seed: int = 0, timings: bool = False) -> Result:
    """Evaluate one identity; the RNG depends only on ``seed`` and ``name``."""
    ident = REGISTRY[name]
    start = time.perf_counter()
    cases = ident.cases(sizes)
    if not cases:
        raise ValueError(f"no admissible cases for {name} with {sizes.given()}")
    params = dict(ident.defaults) | sizes.given()
    if not ident.randomized:
        worst = _aggregate_exact(ident.residual(case) for case in cases)
        n_trials = 1
        tol_used = tol
        passed = worst == "exact-zero" if tol is None else (worst == "exact-zero" or worst < tol)
        params["tol"] = "exact" if tol is None else tol
    else:
        n_trials = ident.trials if trials is None else trials
        tol_used = ident.tol if tol is None else tol
        rng = random.Random(f"{seed}:{name}")
        prepare = getattr(ident.residual, "prepare", None)

        def evaluate(P):
            if prepare is not None:
                prepare(P, cases)
            return max(ident.residual(P, case) for case in cases)

        worst = 0.0
        for _ in range(n_trials):
            _, value = draw_until_regular(rng, ident.draw, evaluate)
            worst = max(worst, value)
        passed = worst == 0.0 or worst < tol_used
        params["tol"] = tol_used
    millis = int((time.perf_counter() - start) * 1000) if timings else 0
    return Result(name, params, n_trials, worst, bool(passed), millis)


def run_report(seed: int = 42, jobs: int = 1, timings: bool = False) -> list[Result]:
    """Every registered identity at its default sweep, ordered by name."""
    names = identity_names()
    if jobs <= 1:
        results = [run_identity(n, seed=seed, timings=timings) for n in names]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_report_worker, [(n, seed, timings) for n in names]))
    return sorted(results, key=lambda r: r.identity)


def _report_worker(args):
    name, seed, timings = args
    return run_identity(name, seed=seed, timings=timings)
