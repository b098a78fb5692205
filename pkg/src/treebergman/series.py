"""Geometric sums with the empty-sum convention (start > end gives 0)."""

from __future__ import annotations


def geom(ratio: float, start: int, end: int) -> float:
    """sum_{j=start}^{end} ratio**j."""
    if start > end:
        return 0.0
    if ratio == 1.0:
        return float(end - start + 1)
    return (ratio**start - ratio ** (end + 1)) / (1.0 - ratio)


def inv_partial(q: float, n: int) -> float:
    """sum_{j=0}^{n} q**(-j); 0 for n < 0."""
    return geom(1.0 / q, 0, n)


def pos_partial(q: float, n: int) -> float:
    """sum_{j=0}^{n} q**j; 0 for n < 0."""
    return geom(float(q), 0, n)
