"""Seeded random vertices, finite functions and basis combinations for the suites."""

from __future__ import annotations

import random

from .bergman import BasisIndex, HarmonicCombo
from .harmonic import FiniteFunction
from .tree import Params, Vertex


def random_vertex(rng: random.Random, q: int, anchors: tuple[int, int] = (-3, 3), max_len: int = 3) -> Vertex:
    anchor = rng.randint(*anchors)
    n = rng.randint(0, max_len)
    if n == 0:
        return Vertex(anchor)
    word = (rng.randint(1, q - 1),) + tuple(rng.randint(0, q - 1) for _ in range(n - 1))
    return Vertex(anchor, word)


def random_descendant(rng: random.Random, v: Vertex, q: int, max_depth: int = 4) -> Vertex:
    x = v
    for _ in range(rng.randint(0, max_depth)):
        d = rng.randrange(q)
        if x.word:
            x = Vertex(x.anchor, x.word + (d,))
        else:
            x = Vertex(x.anchor + 1) if d == 0 else Vertex(x.anchor, (d,))
    return x


def random_finite(rng: random.Random, q: int, size: tuple[int, int] = (1, 8), anchors: tuple[int, int] = (-2, 2),
                  max_len: int = 3, scale: float = 10.0) -> FiniteFunction:
    n = rng.randint(*size)
    out = {}
    while len(out) < n:
        out[random_vertex(rng, q, anchors, max_len)] = rng.uniform(-scale, scale)
    return FiniteFunction(out)


def random_combo(params: Params, rng: random.Random, size: tuple[int, int] = (1, 6),
                 anchors: tuple[int, int] = (-3, 3), max_len: int = 3) -> HarmonicCombo:
    terms = {}
    for _ in range(rng.randint(*size)):
        idx = BasisIndex(random_vertex(rng, params.q, anchors, max_len), rng.randint(1, params.q - 1))
        terms[idx] = rng.gauss(0.0, 1.0)
    return HarmonicCombo(params, terms)


def relabel(x: Vertex, first: list[int], rest: list[int]) -> Vertex:
    """Tree automorphism fixing the reference geodesic and permuting successor labels.

    ``first`` permutes digits at a geodesic vertex and must fix 0; ``rest``
    permutes every later digit.
    """
    if not x.word:
        return x
    return Vertex(x.anchor, (first[x.word[0]],) + tuple(rest[d] for d in x.word[1:]))
