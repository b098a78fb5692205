"""Combinatorial Laplacian, level sums and harmonic extension below a horoball.

Every function object here is "evaluable": calling it on a ``Vertex``
returns a float.  Plain callables work too.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .measure import sigma
from .series import inv_partial, pos_partial
from .tree import Params, Vertex, ancestor, format_vertex, neighbours, parse_vertex, predecessor, sector_level_slice

Evaluable = Callable[[Vertex], float]


class FiniteFunction:
    """Finitely supported real function on the tree; zero entries are dropped."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Vertex, float] | Iterable[tuple[Vertex, float]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[Vertex, float] = {}
        for x, val in items:
            val = float(val)
            if val != 0.0:
                data[x] = val
            else:
                data.pop(x, None)
        self._entries = data

    def __call__(self, x: Vertex) -> float:
        return self._entries.get(x, 0.0)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteFunction) and self._entries == other._entries

    def __repr__(self) -> str:
        body = ", ".join(f"{format_vertex(x)}: {v!r}" for x, v in self.items())
        return f"FiniteFunction({{{body}}})"

    def items(self) -> list[tuple[Vertex, float]]:
        """Entries in a fixed order (by index, then anchor, then word)."""
        return sorted(self._entries.items(), key=lambda kv: (kv[0].index, kv[0].anchor, kv[0].word))

    @property
    def support(self) -> list[Vertex]:
        return [x for x, _ in self.items()]

    def scaled(self, c: float) -> FiniteFunction:
        return FiniteFunction({x: c * v for x, v in self._entries.items()})

    def __add__(self, other: FiniteFunction) -> FiniteFunction:
        out = dict(self._entries)
        for x, v in other._entries.items():
            out[x] = out.get(x, 0.0) + v
        return FiniteFunction(out)

    def __sub__(self, other: FiniteFunction) -> FiniteFunction:
        return self + other.scaled(-1.0)

    def max_abs(self) -> float:
        return max((abs(v) for v in self._entries.values()), default=0.0)

    def lp_norm(self, params: Params, p: float = 2.0) -> float:
        if p < 1:
            raise ValueError("p must be >= 1")
        total = math.fsum(abs(v) ** p * sigma(params, x) for x, v in self.items())
        return total ** (1.0 / p)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for x, v in self.items():
            writer.writerow([format_vertex(x), repr(v)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, q: int | None = None) -> FiniteFunction:
        entries: dict[Vertex, float] = {}
        for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 2:
                raise ValueError(f"line {lineno}: expected 'anchor:word,value', got {row!r}")
            try:
                x = parse_vertex(row[0], q)
                val = float(row[1])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            entries[x] = entries.get(x, 0.0) + val
        return cls(entries)


def laplacian_at(f: Evaluable, x: Vertex, q: int) -> float:
    return math.fsum(f(y) for y in neighbours(x, q)) / (q + 1) - f(x)


def is_harmonic_on(f: Evaluable, region: Iterable[Vertex], q: int, tol: float = 1e-9) -> bool:
    for x in region:
        scale = max(1.0, abs(f(x)))
        if abs(laplacian_at(f, x, q)) > tol * scale:
            return False
    return True


def level_sum(f: Evaluable, y: Vertex, n: int, q: int) -> tuple[float, float]:
    """Brute-force sum of f over U_y at depth n, and the value forced by harmonicity."""
    if n < 0:
        raise ValueError("n must be >= 0")
    lhs = math.fsum(f(x) for x in sector_level_slice(y, n, q))
    rhs = pos_partial(q, n) * f(y) - pos_partial(q, n - 1) * f(predecessor(y))
    return lhs, rhs


def laplacian(f: FiniteFunction, q: int) -> FiniteFunction:
    """Delta f as a finite function (nonzero only on supp f and its neighbours)."""
    region = set(f.support)
    for x in f.support:
        region.update(neighbours(x, q))
    return FiniteFunction({x: laplacian_at(f, x, q) for x in region})


def unharmonic_points(g: FiniteFunction, n: int, q: int, tol: float = 1e-12) -> list[Vertex]:
    """Vertices of the horoball HB_n where g fails the mean property."""
    scale = max(1.0, g.max_abs())
    lap = laplacian(g, q)
    return [x for x, v in lap.items() if x.index <= n and abs(v) > tol * scale]


@dataclass(frozen=True)
class ExtendedFunction:
    """The harmonic extension of ``base`` below the horoball of index ``level``.

    Agrees with ``base`` on HB_{level+1}; below it the value at x depends only on
    the ancestor y of x on H_{level+1} and on p(y).
    """

    base: Evaluable
    level: int
    q: int

    def __call__(self, x: Vertex) -> float:
        k = x.index
        top = self.level + 1
        if k <= top:
            return self.base(x)
        y = ancestor(x, top)
        depth = k - top
        q = self.q
        return inv_partial(q, depth) * self.base(y) - (inv_partial(q, depth) - 1.0) * self.base(predecessor(y))


def harmonic_extension(g: FiniteFunction, n: int, q: int, tol: float = 1e-12) -> ExtendedFunction:
    """g^H_n.  g must be harmonic on HB_n; this is checked on its whole support."""
    bad = unharmonic_points(g, n, q, tol)
    if bad:
        raise ValueError(f"g is not harmonic on HB_{n} at {', '.join(map(format_vertex, bad[:5]))}")
    return ExtendedFunction(g, n, q)


def restrict_to_horoball(f: Evaluable, points: Iterable[Vertex], n: int) -> FiniteFunction:
    """f restricted to ``points`` lying in HB_n."""
    return FiniteFunction({x: f(x) for x in points if x.index <= n})
