"""Brute-force weighted lattice paths: the independent oracle.

A horizontal step (s-1,t) -> (s,t) carries the big weight W(s,t); a
vertical step (s,t-1) -> (s,t) carries v(s,t) (1 for single-weight specs).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .coeffs import SymPoly, poly_sum, v_ind, w_ind
from .errors import PathLimitExceeded
from .ncalgebra import X, Y, wf
from .weights import Family, WeightSpec, big_weight, small_weight_v

H = "H"
V = "V"
MAX_STEPS = 22


@dataclass(frozen=True)
class Path:
    start: tuple
    steps: str

    def __post_init__(self):
        if min(self.start) < 0:
            raise ValueError("paths live in the first quadrant")
        if set(self.steps) - {H, V}:
            raise ValueError(f"steps must be H/V, got {self.steps!r}")

    @property
    def end(self) -> tuple:
        return (self.start[0] + self.steps.count(H), self.start[1] + self.steps.count(V))

    def points(self):
        x, y = self.start
        yield (x, y)
        for step in self.steps:
            if step == H:
                x += 1
            else:
                y += 1
            yield (x, y)

    def __str__(self):
        return self.steps or "(empty)"


def enumerate_paths(A: tuple, omega: tuple) -> list[Path]:
    """All paths A -> omega, H before V in lexicographic order."""
    dx, dy = omega[0] - A[0], omega[1] - A[1]
    if dx < 0 or dy < 0:
        return []
    if dx + dy > MAX_STEPS:
        raise PathLimitExceeded(f"{dx + dy} steps exceeds the oracle cap of {MAX_STEPS}")
    out: list[Path] = []

    def rec(prefix: str, h: int, v: int):
        if h == 0 and v == 0:
            out.append(Path(tuple(A), prefix))
            return
        if h:
            rec(prefix + H, h - 1, v)
        if v:
            rec(prefix + V, h, v - 1)

    rec("", dx, dy)
    return out


def _formal_path_weight(path: Path, double: bool) -> SymPoly:
    # every step ends on a distinct column (H) or row (V), so no exponent
    # exceeds 1 and the factors come out already in monomial order
    ws, vs = [], []
    x, y = path.start
    for step in path.steps:
        if step == H:
            x += 1
            ws.extend((w_ind(x, j), 1) for j in range(1, y + 1))
        else:
            y += 1
            if double:
                vs.append((v_ind(x, y), 1))
    return SymPoly.monomial(tuple(ws + vs))


def path_weight(path: Path, spec: WeightSpec):
    """Product of the step weights along ``path``."""
    result = spec.one()
    x, y = path.start
    for step in path.steps:
        if step == H:
            x += 1
            result = result * big_weight(spec, x, y)
        else:
            y += 1
            if spec.is_double:
                result = result * small_weight_v(spec, x, y)
    return result


@lru_cache(maxsize=8192)
def generating_function(A: tuple, omega: tuple, spec: WeightSpec):
    """Sum of path weights over all paths A -> omega."""
    A, omega = tuple(A), tuple(omega)
    paths = enumerate_paths(A, omega)
    if spec.family in (Family.GenericSymbolic, Family.GenericDoubleSymbolic) and spec.shift == (0, 0):
        return poly_sum(_formal_path_weight(path, spec.is_double) for path in paths)
    # each step weight is looked up once per region rather than once per path
    big = {(s, t): big_weight(spec, s, t)
           for s in range(A[0] + 1, omega[0] + 1) for t in range(A[1], omega[1] + 1)}
    vert = {}
    if spec.is_double:
        vert = {(s, t): small_weight_v(spec, s, t)
                for s in range(A[0], omega[0] + 1) for t in range(A[1] + 1, omega[1] + 1)}
    weights = []
    for path in paths:
        result = spec.one()
        x, y = path.start
        for step in path.steps:
            if step == H:
                x += 1
                result = result * big[x, y]
            else:
                y += 1
                if vert:
                    result = result * vert[x, y]
        weights.append(result)
    if spec.is_symbolic:
        return poly_sum(weights)
    return sum(weights, spec.zero())


def path_to_word(path: Path, double: bool = False) -> tuple:
    """x for H, y (or v(0,1) y for double weights) for V; path must start at (0,0)."""
    if tuple(path.start) != (0, 0):
        raise ValueError("only paths from the origin correspond to words")
    atoms = []
    for step in path.steps:
        if step == H:
            atoms.append(X)
        else:
            if double:
                atoms.append(wf("v", 0, 1))
            atoms.append(Y)
    return tuple(atoms)


class Decomposition(str, enum.Enum):
    Diagonal = "diagonal"
    Vertical = "vertical"
    Horizontal = "horizontal"


def decompose_sides(which, spec: WeightSpec, n: int, m: int, kl: int):
    """Generating function of a region and its split along a line.

    diagonal   (k = kl): (0,0)->(k,n+m-k) split on x+y = n at (j, n-j)
    vertical   (l = kl): (0,0)->(n,m) split at the first step onto x = l,
                         a horizontal step (l-1,k)->(l,k) of weight W(l,k)
    horizontal (k = kl): (0,0)->(n,m) split at the first step onto y = k,
                         a vertical step (l,k-1)->(l,k) of weight v(l,k)
    """
    which = Decomposition(which.value if isinstance(which, enum.Enum) else which)
    if which == Decomposition.Diagonal:
        k = kl
        if not 0 <= k <= n + m:
            raise ValueError("diagonal split needs 0 <= k <= n+m")
        omega = (k, n + m - k)
        lhs = generating_function((0, 0), omega, spec)
        rhs = spec.zero()
        for j in range(0, min(k, n) + 1):
            mid = (j, n - j)
            rhs = rhs + generating_function((0, 0), mid, spec) * generating_function(mid, omega, spec)
        return lhs, rhs
    lhs = generating_function((0, 0), (n, m), spec)
    rhs = spec.zero()
    if which == Decomposition.Vertical:
        l = kl
        if not 1 <= l <= n:
            raise ValueError("vertical split needs 1 <= l <= n")
        for k in range(0, m + 1):
            rhs = rhs + generating_function((0, 0), (l - 1, k), spec) * big_weight(spec, l, k) \
                * generating_function((l, k), (n, m), spec)
        return lhs, rhs
    k = kl
    if not 1 <= k <= m:
        raise ValueError("horizontal split needs 1 <= k <= m")
    for l in range(0, n + 1):
        step = small_weight_v(spec, l, k) if spec.is_double else spec.one()
        rhs = rhs + generating_function((0, 0), (l, k - 1), spec) * step \
            * generating_function((l, k), (n, m), spec)
    return lhs, rhs


def decompose_check(which, spec: WeightSpec, n: int, m: int, kl: int):
    lhs, rhs = decompose_sides(which, spec, n, m, kl)
    return lhs - rhs
