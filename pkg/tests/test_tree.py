import math

import pytest
from hypothesis import given
import hypothesis.strategies as st

from treebergman.tree import (
    ROOT,
    DyadicSet,
    Params,
    Vertex,
    ancestor,
    child,
    confluent,
    distance_d,
    dyadic_cell,
    edge_ball,
    format_vertex,
    geodesic,
    gromov_rho,
    in_sector,
    iter_sector,
    neighbours,
    parse_vertex,
    pred_power,
    predecessor,
    sector_level_slice,
    successors,
)
from conftest import vertices


def test_params_validation():
    with pytest.raises(ValueError):
        Params(q=1)
    with pytest.raises(ValueError):
        Params(alpha=1.0)
    with pytest.raises(ValueError):
        Params(tol=0)
    with pytest.raises(ValueError):
        Params(depth=0)


def test_leading_zero_rejected():
    with pytest.raises(ValueError):
        Vertex(0, (0, 1))


def test_successors_of_geodesic_vertex():
    assert successors(ROOT, 3) == [Vertex(1), Vertex(0, (1,)), Vertex(0, (2,))]
    assert predecessor(ROOT) == Vertex(-1)


def test_index():
    assert Vertex(-2, (1, 0)).index == 0
    assert geodesic(5).index == 5


@given(vertices(q=3))
def test_children_come_back(x):
    for c in successors(x, 3):
        assert predecessor(c) == x
        assert c.index == x.index + 1


@given(vertices())
def test_neighbour_count(x):
    assert len(set(neighbours(x, 2))) == 3


@given(vertices(q=3), st.integers(0, 6))
def test_ancestor_chain(x, n):
    y = pred_power(x, n)
    assert y.index == x.index - n
    assert in_sector(x, y)
    z = x
    for _ in range(n):
        z = predecessor(z)
    assert z == y


def test_ancestor_below_rejected():
    with pytest.raises(ValueError):
        ancestor(ROOT, 1)


@given(vertices(q=3), vertices(q=3))
def test_confluent_laws(x, y):
    c = confluent(x, y)
    assert c == confluent(y, x)
    assert c.index <= min(x.index, y.index)
    assert in_sector(x, c) and in_sector(y, c)
    assert (c == x) == in_sector(y, x)
    # c is the deepest common ancestor
    if c.index < min(x.index, y.index):
        assert ancestor(x, c.index + 1) != ancestor(y, c.index + 1)


@given(vertices(), vertices(), vertices())
def test_confluent_associative(x, y, z):
    assert confluent(confluent(x, y), z) == confluent(x, confluent(y, z))


@given(vertices(), vertices(), vertices())
def test_ultrametric(x, y, z):
    if len({x, y, z}) == 3:
        assert gromov_rho(x, z) <= max(gromov_rho(x, y), gromov_rho(y, z))


def test_rho_values():
    assert gromov_rho(ROOT, ROOT) == 0.0
    assert gromov_rho(Vertex(0, (1,)), Vertex(1)) == 1.0
    assert gromov_rho(Vertex(3), Vertex(0, (1,))) == pytest.approx(math.exp(0))
    assert gromov_rho(Vertex(0, (1, 0)), Vertex(0, (1, 1))) == pytest.approx(math.exp(-1))


@given(vertices(), vertices())
def test_distance_symmetric(x, y):
    assert distance_d(x, y) == distance_d(y, x)
    assert (distance_d(x, y) == 0) == (x == y)


@pytest.mark.parametrize("q,n", [(2, 0), (2, 1), (2, 5), (3, 3)])
def test_level_slice(q, n):
    v = Vertex(0, (1,))
    s = sector_level_slice(v, n, q)
    assert len(s) == len(set(s)) == q**n
    assert all(confluent(x, v) == v and x.index == v.index + n for x in s)


def test_level_slice_rejects_negative():
    with pytest.raises(ValueError):
        sector_level_slice(ROOT, -1, 2)


def test_edge_ball_size():
    for n in range(5):
        assert len(edge_ball(ROOT, n, 2)) == 1 + 3 * (2**n - 1)


def test_dyadic_cell_examples():
    x = Vertex(0, (1, 0, 1))
    assert dyadic_cell(x, 1) == DyadicSet.sector(pred_power(x, 2))
    y = Vertex(0, ())
    assert dyadic_cell(y, 2) == DyadicSet.singleton(y)
    assert dyadic_cell(x, x.index) == DyadicSet.sector(x)


def test_dyadic_partition_and_refinement():
    region = list(iter_sector(Vertex(-2), 5, 2))
    for k in range(-3, 3):
        cells = {dyadic_cell(x, k) for x in region}
        for x in region:
            assert sum(x in c for c in cells) == 1
            assert all(y in dyadic_cell(x, k - 1) for y in region if y in dyadic_cell(x, k))


@given(vertices(q=5, anchors=(-100, 100), max_len=8))
def test_text_round_trip(x):
    assert parse_vertex(format_vertex(x), 5) == x


@pytest.mark.parametrize("text,expected", [("0:", ROOT), ("0:1", Vertex(0, (1,))), ("-2:10", Vertex(-2, (1, 0)))])
def test_parse_examples(text, expected):
    assert parse_vertex(text) == expected


@pytest.mark.parametrize("text,msg", [
    ("0", "expected"),
    ("x:1", "bad anchor"),
    ("0:01", "non-canonical"),
    ("0:12", "column 4"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ValueError, match=msg):
        parse_vertex(text, 2)


def test_base36_digits():
    x = parse_vertex("3:a0", 12)
    assert x == Vertex(3, (10, 0))
    assert format_vertex(x) == "3:a0"


def test_child_digit_zero_on_geodesic():
    assert child(Vertex(2), 0) == Vertex(3)
    assert child(Vertex(2, (1,)), 0) == Vertex(2, (1, 0))
