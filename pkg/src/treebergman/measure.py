"""Horocyclic measures sigma_alpha(x) = q**(-alpha * <x>), sectors and balls."""

from __future__ import annotations

import math
from typing import Iterable

from .tree import DyadicSet, Params, Vertex, ancestor, edge_ball

# size of the q=2 edge ball of radius 12; larger q get proportionally fewer levels
_MAX_BALL_VERTICES = 1 + 3 * (2**12 - 1)


def sigma_at_index(params: Params, k: int) -> float:
    return float(params.q) ** (-params.alpha * k)


def sigma(params: Params, x: Vertex) -> float:
    return sigma_at_index(params, x.index)


def sector_ratio(params: Params) -> float:
    """sigma(U_v) / sigma(v) = 1 / (1 - q**(1 - alpha))."""
    return 1.0 / (1.0 - float(params.q) ** (1.0 - params.alpha))


def sector_measure_at_index(params: Params, k: int) -> float:
    return sigma_at_index(params, k) * sector_ratio(params)


def sector_measure(params: Params, v: Vertex) -> float:
    return sector_measure_at_index(params, v.index)


def cell_measure(params: Params, cell: DyadicSet) -> float:
    if cell.is_sector:
        return sector_measure(params, cell.vertex)
    return sigma(params, cell.vertex)


def _floor_neglog(r: float) -> int:
    t = -math.log(r)
    k = round(t)
    # radii like exp(-k) must land on k despite rounding in log
    if abs(t - k) < 1e-12:
        return int(k)
    return math.floor(t)


def gromov_ball(x: Vertex, r: float) -> DyadicSet:
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r!r}")
    k = _floor_neglog(r)
    if k > x.index:
        return DyadicSet.singleton(x)
    return DyadicSet.sector(ancestor(x, k))


def ball_measure(params: Params, x: Vertex, r: float) -> float:
    return cell_measure(params, gromov_ball(x, r))


def doubling_constant(params: Params) -> float:
    return max(float(params.q) ** params.alpha, sector_ratio(params))


def doubling_ratio_sup(params: Params, sample: Iterable[tuple[Vertex, float]]) -> float:
    best = None
    for x, r in sample:
        ratio = ball_measure(params, x, 2 * r) / ball_measure(params, x, r)
        best = ratio if best is None else max(best, ratio)
    if best is None:
        raise ValueError("empty sample")
    return best


def ball_size(q: int, n: int) -> int:
    """Number of vertices at edge distance <= n."""
    return 1 + (q + 1) * (q**n - 1) // (q - 1)


def enumeration_limit(q: int) -> int:
    n = 0
    while ball_size(q, n + 1) <= _MAX_BALL_VERTICES:
        n += 1
    return n


def counting_ball_measure(params: Params, v: Vertex, n: int, limit: int | None = None) -> float:
    """sigma_alpha of the edge-distance ball B_d(v, n), by exhaustive enumeration."""
    if limit is None:
        limit = enumeration_limit(params.q)
    if n < 0:
        raise ValueError("radius must be >= 0")
    if n > limit:
        raise ValueError(f"radius {n} exceeds enumeration limit {limit} for q={params.q}")
    # sum per horocycle to keep the result independent of set iteration order
    counts: dict[int, int] = {}
    for x in edge_ball(v, n, params.q):
        counts[x.index] = counts.get(x.index, 0) + 1
    return math.fsum(c * sigma_at_index(params, k) for k, c in sorted(counts.items()))
