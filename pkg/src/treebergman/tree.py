"""Canonical coordinates on the q-homogeneous tree with a fixed boundary point.

A vertex is addressed by the horocyclic index of its highest ancestor on a
fixed reference geodesic ``(r_k)`` running towards the boundary point, plus
the digits of the descent path from that ancestor.  Digit ``0`` taken from a
geodesic vertex means "stay on the geodesic", so a nonempty word never
starts with ``0`` and every vertex has exactly one representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Params:
    """Branching parameter, measure exponent and numeric defaults."""

    q: int = 2
    alpha: float = 2.0
    tol: float = 1e-9
    depth: int = 40

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"q must be an integer >= 2, got {self.q!r}")
        if not self.alpha > 1:
            raise ValueError(f"alpha must be > 1, got {self.alpha!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth!r}")


@dataclass(frozen=True, slots=True, order=True)
class Vertex:
    anchor: int
    word: tuple[int, ...] = ()

    def __post_init__(self):
        if self.word and self.word[0] == 0:
            raise ValueError(f"non-canonical vertex {self.anchor}:{self.word}")

    @property
    def index(self) -> int:
        """Horocyclic index."""
        return self.anchor + len(self.word)

    @property
    def on_geodesic(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        return format_vertex(self)


@dataclass(frozen=True, slots=True)
class DyadicSet:
    """Either the sector generated by ``vertex`` or the singleton ``{vertex}``."""

    vertex: Vertex
    is_sector: bool

    @classmethod
    def sector(cls, v: Vertex) -> DyadicSet:
        return cls(v, True)

    @classmethod
    def singleton(cls, v: Vertex) -> DyadicSet:
        return cls(v, False)

    def __contains__(self, x: Vertex) -> bool:
        if self.is_sector:
            return in_sector(x, self.vertex)
        return x == self.vertex

    def __str__(self) -> str:
        kind = "U" if self.is_sector else "pt"
        return f"{kind}({format_vertex(self.vertex)})"


def geodesic(k: int) -> Vertex:
    """The reference geodesic vertex r_k."""
    return Vertex(k, ())


ROOT = geodesic(0)


def predecessor(x: Vertex) -> Vertex:
    if x.word:
        return Vertex(x.anchor, x.word[:-1])
    return Vertex(x.anchor - 1, ())


def child(x: Vertex, d: int) -> Vertex:
    """Successor number ``d`` of ``x`` in the canonical ordering."""
    if x.word:
        return Vertex(x.anchor, x.word + (d,))
    if d == 0:
        return Vertex(x.anchor + 1, ())
    return Vertex(x.anchor, (d,))


def child_digit(x: Vertex) -> int:
    """Position of ``x`` among the successors of its predecessor."""
    return x.word[-1] if x.word else 0


def successors(x: Vertex, q: int) -> list[Vertex]:
    return [child(x, d) for d in range(q)]


def neighbours(x: Vertex, q: int) -> list[Vertex]:
    return [predecessor(x)] + successors(x, q)


def ancestor(x: Vertex, k: int) -> Vertex:
    """The unique vertex of ``[x, omega)`` with horocyclic index ``k``."""
    if k > x.index:
        raise ValueError(f"no ancestor of {x} at index {k}")
    if k >= x.anchor:
        return Vertex(x.anchor, x.word[: k - x.anchor])
    return Vertex(k, ())


def pred_power(x: Vertex, n: int) -> Vertex:
    """p^n(x)."""
    if n < 0:
        raise ValueError("negative predecessor power")
    return ancestor(x, x.index - n)


def confluent(x: Vertex, y: Vertex) -> Vertex:
    if x.anchor != y.anchor:
        return geodesic(min(x.anchor, y.anchor))
    n = 0
    for a, b in zip(x.word, y.word):
        if a != b:
            break
        n += 1
    return Vertex(x.anchor, x.word[:n])


def in_sector(x: Vertex, v: Vertex) -> bool:
    """True iff x lies in U_v, i.e. v is on [x, omega)."""
    k = v.index
    if k > x.index:
        return False
    if k >= x.anchor:
        return v.anchor == x.anchor and x.word[: len(v.word)] == v.word
    return not v.word


def distance_d(x: Vertex, y: Vertex) -> int:
    c = confluent(x, y).index
    return (x.index - c) + (y.index - c)


def gromov_rho(x: Vertex, y: Vertex) -> float:
    # rho(x, x) = 0 so that x belongs to every ball around itself
    if x == y:
        return 0.0
    return math.exp(-confluent(x, y).index)


def sector_level_slice(v: Vertex, n: int, q: int) -> list[Vertex]:
    """All q**n vertices of U_v on the horocycle of index <v> + n."""
    if n < 0:
        raise ValueError("slice depth must be >= 0")
    level = [v]
    for _ in range(n):
        level = [c for x in level for c in successors(x, q)]
    return level


def iter_sector(v: Vertex, depth: int, q: int) -> Iterator[Vertex]:
    """Vertices of U_v down to ``depth`` levels below v, breadth first."""
    level = [v]
    for _ in range(depth + 1):
        yield from level
        level = [c for x in level for c in successors(x, q)]


def edge_ball(v: Vertex, n: int, q: int) -> list[Vertex]:
    """Vertices at edge distance <= n from v, by breadth-first search."""
    seen = {v}
    frontier = [v]
    for _ in range(n):
        nxt = []
        for x in frontier:
            for y in neighbours(x, q):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return list(seen)


def dyadic_cell(x: Vertex, k: int) -> DyadicSet:
    """The cell of the level-k dyadic partition containing x."""
    if x.index >= k:
        return DyadicSet.sector(ancestor(x, k))
    return DyadicSet.singleton(x)


def format_vertex(x: Vertex) -> str:
    return f"{x.anchor}:" + "".join(_DIGITS[d] for d in x.word)


def parse_vertex(text: str, q: int | None = None) -> Vertex:
    """Parse ``anchor:word`` (e.g. ``0:``, ``-2:10``)."""
    text = text.strip()
    head, sep, tail = text.partition(":")
    if not sep:
        raise ValueError(f"vertex {text!r}: expected 'anchor:word'")
    try:
        anchor = int(head)
    except ValueError:
        raise ValueError(f"vertex {text!r}: bad anchor {head!r}") from None
    word = []
    for col, ch in enumerate(tail.lower(), start=len(head) + 2):
        d = _DIGITS.find(ch)
        if d < 0 or (q is not None and d >= q):
            raise ValueError(f"vertex {text!r}: bad digit {ch!r} at column {col}")
        word.append(d)
    if word and word[0] == 0:
        raise ValueError(f"vertex {text!r}: non-canonical word (leading 0)")
    return Vertex(anchor, tuple(word))
