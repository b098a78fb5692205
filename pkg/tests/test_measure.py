import math

import pytest
from hypothesis import given
import hypothesis.strategies as st

from treebergman import oracles
from treebergman.measure import (
    ball_measure,
    counting_ball_measure,
    doubling_constant,
    doubling_ratio_sup,
    enumeration_limit,
    gromov_ball,
    sector_measure,
    sigma,
)
from treebergman.tree import ROOT, DyadicSet, Params, Vertex, pred_power, successors
from conftest import vertices

P = Params()


@pytest.mark.parametrize("k,expected", [(0, 1.0), (1, 0.25), (-1, 4.0)])
def test_sigma(k, expected):
    assert sigma(P, Vertex(k)) == expected


@pytest.mark.parametrize("k,expected", [(0, 2.0), (1, 0.5)])
def test_sector_measure_values(k, expected):
    partial, tail = oracles.series_sector_measure(P, Vertex(k), 60)
    assert abs(partial - expected) <= tail + 1e-15
    assert sector_measure(P, Vertex(k)) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("q,alpha", [(2, 1.5), (2, 2.0), (3, 1.5), (3, 3.0), (5, 1.2)])
def test_sector_series(q, alpha):
    p = Params(q=q, alpha=alpha)
    for k in range(-3, 4):
        partial, tail = oracles.series_sector_measure(p, Vertex(k), 60)
        exact = sector_measure(p, Vertex(k))
        assert abs(exact - partial) <= tail + 1e-12 * exact


@given(vertices(q=3))
def test_sector_additivity(v):
    p = Params(q=3, alpha=1.7)
    parts = sigma(p, v) + math.fsum(sector_measure(p, z) for z in successors(v, 3))
    assert sector_measure(p, v) == pytest.approx(parts, rel=1e-14)


def test_sector_to_point_ratio():
    for k in range(-3, 4):
        assert sector_measure(P, Vertex(0, (1,) * (k + 4))) / sigma(P, Vertex(0, (1,) * (k + 4))) == pytest.approx(2.0)


def test_gromov_ball_cases():
    x = ROOT
    assert gromov_ball(x, math.exp(-1.5)) == DyadicSet.singleton(x)
    assert gromov_ball(x, 1.0) == DyadicSet.sector(x)
    y = Vertex(0, (1, 1))
    assert gromov_ball(y, 1.0) == DyadicSet.sector(pred_power(y, 2))
    # radii exactly e^-k
    assert gromov_ball(y, math.exp(-2)) == DyadicSet.sector(y)


def test_gromov_ball_rejects_nonpositive():
    with pytest.raises(ValueError):
        gromov_ball(ROOT, 0.0)
    with pytest.raises(ValueError):
        ball_measure(P, ROOT, -1.0)


@given(vertices(), st.floats(-6, 6), st.floats(-6, 6))
def test_ball_contains_centre_and_nests(x, s, t):
    r1, r2 = sorted((math.exp(s), math.exp(t)))
    assert x in gromov_ball(x, r1)
    assert ball_measure(P, x, r1) <= ball_measure(P, x, r2)


@pytest.mark.parametrize("q,alpha,expected", [(2, 2.0, 4.0), (3, 2.0, 9.0), (2, 1.1, 1 / (1 - 2**-0.1))])
def test_doubling_constant(q, alpha, expected):
    assert doubling_constant(Params(q=q, alpha=alpha)) == pytest.approx(expected)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
def test_doubling_extremes_attained(q, alpha):
    p = Params(q=q, alpha=alpha)
    x = Vertex(0, (1,))
    to_sector = doubling_ratio_sup(p, [(x, math.exp(-2.5))])
    up_one = doubling_ratio_sup(p, [(x, math.exp(-0.5))])
    assert to_sector == pytest.approx(1 / (1 - q ** (1 - alpha)), rel=1e-14)
    assert up_one == pytest.approx(q**alpha, rel=1e-14)
    assert max(to_sector, up_one) == pytest.approx(doubling_constant(p), rel=1e-14)


@given(st.lists(st.tuples(vertices(), st.floats(-8, 8)), min_size=1, max_size=30))
def test_doubling_bound(sample):
    pairs = [(x, math.exp(s)) for x, s in sample]
    assert doubling_ratio_sup(P, pairs) <= doubling_constant(P) * (1 + 1e-12)


def test_doubling_rejects_empty():
    with pytest.raises(ValueError):
        doubling_ratio_sup(P, [])


def test_counting_ball_examples():
    assert counting_ball_measure(P, ROOT, 0) == 1.0
    assert counting_ball_measure(P, ROOT, 1) == 5.5


@pytest.mark.parametrize("q", [2, 3])
def test_counting_ball_vs_closed_count(q):
    p = Params(q=q, alpha=1.8)
    for v in (ROOT, Vertex(1, (1, 0)), Vertex(-2, (q - 1,))):
        for n in range(0, 5):
            assert counting_ball_measure(p, v, n) == pytest.approx(oracles.counting_ball_closed(p, v, n), rel=1e-13)


def test_counting_ball_limit():
    assert enumeration_limit(2) == 12
    assert enumeration_limit(3) < 12
    with pytest.raises(ValueError, match="enumeration limit"):
        counting_ball_measure(P, ROOT, 13)


def test_non_doubling_ratio_increases():
    ratios = []
    for n in range(1, 7):
        v = Vertex(0, (1,) + (0,) * (2 * n - 1))
        ratios.append(counting_ball_measure(P, v, 2 * n) / counting_ball_measure(P, v, n))
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
