"""Bergman projection, Calderon-Zygmund decomposition, Hormander estimates, atoms and BMO."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .bergman import coefficients, kernel
from .harmonic import FiniteFunction
from .measure import cell_measure, doubling_constant, sector_measure, sigma, sigma_at_index
from .tree import (
    DyadicSet,
    Params,
    Vertex,
    ancestor,
    child,
    confluent,
    dyadic_cell,
    in_sector,
    pred_power,
    successors,
)


class PiecewiseFunction:
    """Point values plus constants on pairwise disjoint sectors.

    A point entry overrides the sector constant at that vertex, so it may be 0.
    """

    __slots__ = ("points", "sectors")

    def __init__(self, points: Mapping[Vertex, float] = (), sectors: Iterable[tuple[Vertex, float]] = ()):
        self.points: dict[Vertex, float] = {x: float(v) for x, v in dict(points).items()}
        self.sectors: list[tuple[Vertex, float]] = [(v, float(c)) for v, c in sectors]
        for i, (v, _) in enumerate(self.sectors):
            for w, _ in self.sectors[i + 1:]:
                if in_sector(v, w) or in_sector(w, v):
                    raise ValueError(f"overlapping sectors at {v} and {w}")

    @classmethod
    def from_finite(cls, f: FiniteFunction) -> PiecewiseFunction:
        return cls(dict(f.items()))

    def sector_value(self, x: Vertex) -> float:
        for v, c in self.sectors:
            if in_sector(x, v):
                return c
        return 0.0

    def __call__(self, x: Vertex) -> float:
        if x in self.points:
            return self.points[x]
        return self.sector_value(x)

    def __repr__(self) -> str:
        return f"PiecewiseFunction({len(self.points)} points, {len(self.sectors)} sectors)"


AnyFunction = Union[FiniteFunction, PiecewiseFunction]


def _as_piecewise(f: AnyFunction) -> PiecewiseFunction:
    return f if isinstance(f, PiecewiseFunction) else PiecewiseFunction.from_finite(f)


def _overlap_measure(params: Params, v: Vertex, cell: DyadicSet) -> float:
    """sigma(U_v intersect cell)."""
    w = cell.vertex
    if not cell.is_sector:
        return sigma(params, w) if in_sector(w, v) else 0.0
    if in_sector(v, w):
        return sector_measure(params, v)
    if in_sector(w, v):
        return sector_measure(params, w)
    return 0.0


def integral(params: Params, f: AnyFunction, cell: DyadicSet | None = None, power: float | None = None) -> float:
    """sum_x g(x) sigma(x) over ``cell`` (whole tree if None), g = f or |f|**power."""
    pw = _as_piecewise(f)
    g = (lambda t: t) if power is None else (lambda t: abs(t) ** power)
    parts = []
    for v, c in pw.sectors:
        m = sector_measure(params, v) if cell is None else _overlap_measure(params, v, cell)
        parts.append(g(c) * m)
    for x, val in pw.points.items():
        if cell is None or x in cell:
            parts.append((g(val) - g(pw.sector_value(x))) * sigma(params, x))
    return math.fsum(parts)


def lp_norm(params: Params, f: AnyFunction, p: float) -> float:
    if p < 1:
        raise ValueError("p must be >= 1")
    if math.isinf(p):
        return sup_norm(f)
    return integral(params, f, power=p) ** (1.0 / p)


def sup_norm(f: AnyFunction) -> float:
    pw = _as_piecewise(f)
    # each sector keeps infinitely many non-overridden points
    vals = [abs(c) for _, c in pw.sectors] + [abs(v) for v in pw.points.values()]
    return max(vals, default=0.0)


def mean(params: Params, f: AnyFunction, cell: DyadicSet) -> float:
    return integral(params, f, cell) / cell_measure(params, cell)


def pairing(params: Params, f: AnyFunction, g: AnyFunction) -> float:
    """sum f g sigma; at least one argument must be finitely supported."""
    if isinstance(f, FiniteFunction):
        fin, other = f, g
    elif isinstance(g, FiniteFunction):
        fin, other = g, f
    else:
        raise TypeError("pairing needs a FiniteFunction argument")
    return math.fsum(val * other(x) * sigma(params, x) for x, val in fin.items())


def project_eval(params: Params, f: FiniteFunction, z: Vertex) -> float:
    """(P f)(z) = sum_x K(z, x) f(x) sigma(x)."""
    return math.fsum(kernel(params, z, x) * val * sigma(params, x) for x, val in f.items())


class Projection:
    """P f as an evaluable function."""

    def __init__(self, params: Params, f: FiniteFunction):
        self.params = params
        self.f = f

    def __call__(self, z: Vertex) -> float:
        return project_eval(self.params, self.f, z)


# -- Calderon-Zygmund ---------------------------------------------------------


@dataclass
class CZOutput:
    good: PiecewiseFunction
    bad: list[tuple[DyadicSet, PiecewiseFunction]]
    lam: float
    selected: list[DyadicSet]
    start_level: int
    c_good: float  # ||good||_2^2 / (lam ||f||_1)
    c_bad: float  # sum ||bad_j||_1 / ||f||_1
    c_good_bound: float = field(default=0.0)
    c_bad_bound: float = field(default=2.0)


def _mean_abs(params: Params, f: FiniteFunction, cell: DyadicSet) -> float:
    mass = math.fsum(abs(v) * sigma(params, x) for x, v in f.items() if x in cell)
    return mass / cell_measure(params, cell)


def cz_decompose(params: Params, f: FiniteFunction, lam: float) -> CZOutput:
    """Dyadic stopping-time decomposition f = good + sum bad_j at height lam."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    if not f:
        raise ValueError("f must not be identically zero")
    supp = f.support
    kmin = min(x.index for x in supp)
    kmax = max(x.index for x in supp)

    def cells(k, pts):
        return sorted({dyadic_cell(x, k) for x in pts}, key=lambda c: (c.vertex, c.is_sector))

    k0 = kmin
    while any(_mean_abs(params, f, c) > lam for c in cells(k0, supp)):
        k0 -= 1

    selected: list[DyadicSet] = []
    remaining = list(supp)
    for k in range(k0 + 1, kmax + 2):
        chosen = [c for c in cells(k, remaining) if _mean_abs(params, f, c) > lam]
        if chosen:
            selected.extend(chosen)
            remaining = [x for x in remaining if not any(x in c for c in chosen)]

    good_points = {x: f(x) for x in remaining}
    good_sectors = []
    bad = []
    for cell in selected:
        f_mean = math.fsum(v * sigma(params, x) for x, v in f.items() if x in cell) / cell_measure(params, cell)
        if cell.is_sector:
            good_sectors.append((cell.vertex, f_mean))
            inside = {x: v - f_mean for x, v in f.items() if x in cell}
            bad.append((cell, PiecewiseFunction(inside, [(cell.vertex, -f_mean)])))
        else:
            good_points[cell.vertex] = f(cell.vertex)
            bad.append((cell, PiecewiseFunction()))
    good = PiecewiseFunction(good_points, good_sectors)

    l1 = f.lp_norm(params, 1)
    c_good = integral(params, good, power=2) / (lam * l1)
    c_bad = math.fsum(integral(params, b, power=1) for _, b in bad) / l1
    return CZOutput(good, bad, lam, selected, k0, c_good, c_bad, c_good_bound=doubling_constant(params))


# -- Hormander condition ------------------------------------------------------


def _hormander_level_constant(params: Params) -> float:
    """K0 with sum over one confluent level c of |K(z,x)-K(z,y)| sigma(z) <= K0 q^(c-<v>)."""
    q, a = float(params.q), params.alpha
    C = coefficients(params).C
    r = 1 / q
    return 2 * (1 - q**-a) / (C * (1 - r) * (1 - q ** (-a - 1)) * (1 - q ** (1 - a)))


def hormander_constant(params: Params) -> float:
    """Uniform bound for the off-sector integral of kernel-column differences."""
    return _hormander_level_constant(params) / (params.q - 1)


def _branch_representative(w: Vertex, avoid: Vertex, h: int, q: int) -> Vertex:
    """A vertex at index h below w whose path leaves w away from ``avoid``."""
    first = next(c for c in successors(w, q) if c != avoid)
    z = first
    while z.index < h:
        z = child(z, 0)
    return z


def _diff_coefficients(params: Params, c: int, x: Vertex, y: Vertex) -> tuple[float, float]:
    """(a, b) with K(z,x) - K(z,y) = a + b r^(h-c+1) for z at index h > c leaving the confluent c.

    Valid when both x and y are strictly below the confluent of index c.
    """
    q, al = float(params.q), params.alpha
    co = coefficients(params)
    r = 1 / q
    P = (q - 1) / q * q ** (al * (c - 1)) / ((1 - r) ** 2 * co.C)
    a1 = 1 / (1 - q ** (-al - 1))
    a2 = 1 / (1 - q ** (-al - 2))
    Bx, By = x.index - c + 1, y.index - c + 1
    dB = r**Bx - r**By
    dS = ((1 - r ** (Bx - 1)) - (1 - r ** (By - 1))) / (1 - r)
    bc = co.b(c)
    a = -P * dB * a1 - dS / (q * bc * (1 - r))
    b = P * dB * a2 + dS / (bc * (1 - r))
    return a, b


def hormander_level(params: Params, v: Vertex, x: Vertex, y: Vertex, c: int, depth: int) -> float:
    """Exact sum of |K(z,x) - K(z,y)| sigma(z) over z outside U_v with <z ^ v> = c.

    Vertices with index up to ``depth`` are summed class by class through the
    kernel; deeper ones through the geometric form of the difference.
    """
    q = params.q
    w = ancestor(v, c)
    toward = ancestor(v, c + 1)
    total = [abs(kernel(params, w, x) - kernel(params, w, y)) * sigma(params, w)]
    h = c + 1
    a, b = _diff_coefficients(params, c, x, y)
    r = 1.0 / q
    # enumerate until the sign of a + b r^(h-c+1) can no longer change
    while h <= depth or (a != 0 and b != 0 and -a / b > 0 and r ** (h - c + 1) >= -a / b):
        z = _branch_representative(w, toward, h, q)
        count = (q - 1) * q ** (h - c - 1)
        total.append(count * abs(kernel(params, z, x) - kernel(params, z, y)) * sigma_at_index(params, h))
        h += 1
    if a != 0 or b != 0:
        qf, al = float(q), params.alpha
        sign = 1.0 if a + b * r ** (h - c + 1) >= 0 else -1.0
        tail = (q - 1) * qf ** (-c - 1) * (
            a * qf ** (h * (1 - al)) / (1 - qf ** (1 - al))
            + b * qf ** (c - 1) * qf ** (-al * h) / (1 - qf**-al)
        )
        total.append(sign * tail)
    return math.fsum(total)


def hormander_sum(params: Params, v: Vertex, x: Vertex, y: Vertex, window: int) -> tuple[float, float]:
    """Bracket [lower, upper] for sum_{z not in U_v} |K(z,x) - K(z,y)| sigma(z).

    Confluent levels within ``window`` of v are summed exactly; the remaining
    levels are covered by the per-level bound K0 q^(c - <v>).
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if not (in_sector(x, v) and in_sector(y, v)):
        raise ValueError("x and y must lie in the sector U_v")
    tail = _hormander_level_constant(params) * float(params.q) ** (-window - 1) / (1 - 1 / params.q)
    if x == y:
        return 0.0, tail
    k = v.index
    depth = k + window
    lower = math.fsum(hormander_level(params, v, x, y, c, depth) for c in range(k - 1, k - window - 1, -1))
    return lower, lower + tail


# -- atoms and BMO --------------------------------------------------------------


@dataclass
class AtomReport:
    is_atom: bool
    support_cell: DyadicSet | None
    norm_check: float  # ||a||_p / allowed norm; <= 1 for an atom
    mean: float
    support_ok: bool = True


def _support_in(f: PiecewiseFunction, cell: DyadicSet) -> bool:
    for x, val in f.points.items():
        if val != 0.0 and x not in cell:
            return False
    for v, c in f.sectors:
        if c != 0.0 and not (cell.is_sector and in_sector(v, cell.vertex)):
            return False
    return True


def is_atom(params: Params, a: AnyFunction, p: float, cell: DyadicSet) -> AtomReport:
    """Check the three (1,p)-atom conditions for ``a`` on ``cell``."""
    if not p > 1:
        raise ValueError("p must be > 1")
    pw = _as_piecewise(a)
    tol = params.tol
    mass = cell_measure(params, cell)
    support_ok = _support_in(pw, cell)
    if math.isinf(p):
        allowed = 1.0 / mass
    else:
        allowed = mass ** (1.0 / p - 1.0)
    ratio = lp_norm(params, pw, p) / allowed
    avg = integral(params, pw, cell)
    ok = support_ok and ratio <= 1 + tol and abs(avg) <= tol * max(1.0, integral(params, pw, cell, power=1))
    return AtomReport(ok, cell, ratio, avg, support_ok)


def oscillation(params: Params, f: FiniteFunction, cell: DyadicSet) -> float:
    """(1/sigma(D)) sum_{x in D} |f(x) - f_D| sigma(x) for finitely supported f."""
    mass = cell_measure(params, cell)
    inside = [(x, v) for x, v in f.items() if x in cell]
    f_mean = math.fsum(v * sigma(params, x) for x, v in inside) / mass
    covered = math.fsum(sigma(params, x) for x, _ in inside)
    parts = [abs(v - f_mean) * sigma(params, x) for x, v in inside]
    parts.append(abs(f_mean) * (mass - covered))
    return math.fsum(parts) / mass


def hull_top(points: Sequence[Vertex]) -> Vertex:
    top = points[0]
    for x in points[1:]:
        top = confluent(top, x)
    return top


def skeleton(points: Sequence[Vertex], top: Vertex) -> set[Vertex]:
    """Union of the paths from each point up to ``top``."""
    out = set()
    for x in points:
        while True:
            out.add(x)
            if x == top:
                break
            x = pred_power(x, 1)
    return out


@dataclass
class BMOReport:
    value: float
    cell: DyadicSet | None
    cells_checked: int
    above_window_bound: float  # bound on the oscillation over any cell above the window


def bmo_scan(params: Params, f: FiniteFunction, p_levels: int = 3) -> BMOReport:
    """Dyadic BMO sup over cells generated within ``p_levels`` steps above the support hull.

    Only sectors whose generator is an ancestor of a support point can oscillate;
    those above the window oscillate by at most 2 ||f||_1 / sigma(D).
    """
    if p_levels < 1:
        raise ValueError("p_levels must be >= 1")
    if not f:
        return BMOReport(0.0, None, 0, 0.0)
    supp = f.support
    top = pred_power(hull_top(supp), p_levels)
    best, arg = 0.0, None
    nodes = sorted(skeleton(supp, top))
    for w in nodes:
        cell = DyadicSet.sector(w)
        val = oscillation(params, f, cell)
        if val > best:
            best, arg = val, cell
    above = 2 * f.lp_norm(params, 1) / sector_measure(params, pred_power(top, 1))
    return BMOReport(best, arg, len(nodes), above)


def bmo_norm(params: Params, f: FiniteFunction, p_levels: int = 3) -> float:
    return bmo_scan(params, f, p_levels).value


# -- weak type (1,1) diagnostics ------------------------------------------------


def region_classes(points: Sequence[Vertex], top: Vertex, depth: int, q: int) -> list[tuple[Vertex, int]]:
    """Partition of U_top truncated at index ``depth`` into (representative, count) classes.

    Vertices off the skeleton of ``points`` that branch off at the same skeleton
    vertex and sit on the same horocycle see every point through the same
    confluent, so any kernel sum over ``points`` is constant on each class.
    """
    skel = skeleton(points, top)
    out = []
    for s in sorted(skel):
        if s.index <= depth:
            out.append((s, 1))
        free = [c for c in successors(s, q) if c not in skel]
        if not free:
            continue
        for h in range(s.index + 1, depth + 1):
            z = free[0]
            while z.index < h:
                z = child(z, 0)
            out.append((z, len(free) * q ** (h - s.index - 1)))
    return out


def weak_type_curve(params: Params, f: FiniteFunction, lambdas: Sequence[float], window: int) -> list[tuple[float, float, float]]:
    """(lambda, sigma{|Pf| > lambda} within the window, ||f||_1 / lambda) for each lambda.

    The window is U_{p^window(top)} cut at ``window`` levels below the deepest
    support point, so masses underestimate the full superlevel sets.
    """
    if any(not lam > 0 for lam in lambdas):
        raise ValueError("lambdas must be positive")
    if not f:
        return [(lam, 0.0, 0.0) for lam in lambdas]
    supp = f.support
    top = pred_power(hull_top(supp), window)
    depth = max(x.index for x in supp) + window
    values = [(abs(project_eval(params, f, z)), count * sigma(params, z))
              for z, count in region_classes(supp, top, depth, params.q)]
    l1 = f.lp_norm(params, 1)
    out = []
    for lam in lambdas:
        mass = math.fsum(m for val, m in values if val > lam)
        out.append((lam, mass, l1 / lam))
    return out
