"""Independent reference computations: direct partial sums and brute-force enumeration.

Nothing here uses the closed forms it is meant to check.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .bergman import BasisIndex, eval_basis, norm_basis
from .tree import Params, Vertex, ancestor, child, confluent, in_sector, iter_sector, successors


def _partial(q: float, n: int, sign: int) -> float:
    # sum_{j=0}^{n} q^(sign*j), term by term
    return math.fsum(q ** (sign * j) for j in range(n + 1))


@lru_cache(maxsize=None)
def series_coefficients(params: Params, L: int | None = None) -> tuple[float, float, float]:
    """(C, Cp, tail) from the defining double series truncated at l = L.

    The l-th term is at most q^(-alpha(l+1)) * q/(q-1) * q^(l+1)/(q-1), so the
    remainder is bounded by a geometric series in q^(1-alpha).  By default L is
    large enough to push that remainder below 1e-17.
    """
    q, a = float(params.q), params.alpha
    pref = q / (q - 1) ** 2 / (1 - q ** (1 - a))
    if L is None:
        L = math.ceil((17 * math.log(10) + math.log(pref)) / ((a - 1) * math.log(q)))
    C, Cp = [], []
    for l in range(L + 1):
        inv = _partial(q, l, -1)
        # q^(-alpha(l+1)) times sum_j q^j, kept in range for large l
        C.append(inv * math.fsum(q ** (j - a * (l + 1)) for j in range(l + 1)))
        Cp.append(inv * math.fsum(q ** (j - a * (l + 1)) for j in range(l)))
    tail = pref * q ** ((1 - a) * (L + 1))
    return math.fsum(C), math.fsum(Cp), tail


def series_sector_measure(params: Params, v: Vertex, D: int = 60) -> tuple[float, float]:
    """sigma(U_v) summed horocycle by horocycle down to D levels below v, with the remainder."""
    q, a = float(params.q), params.alpha
    k = v.index
    partial = math.fsum(q**i * q ** (-a * (k + i)) for i in range(D + 1))
    tail = q ** (-a * k) * q ** ((1 - a) * (D + 1)) / (1 - q ** (1 - a))
    return partial, tail


def counting_ball_closed(params: Params, v: Vertex, n: int) -> float:
    """sigma of the edge-distance ball, by counting: climb j steps, then descend i steps."""
    q, a = params.q, params.alpha
    k = v.index
    parts = []
    for j in range(n + 1):
        top = k - j
        parts.append(float(q) ** (-a * top))
        for i in range(1, n - j + 1):
            count = q**i if j == 0 else (q - 1) * q ** (i - 1)
            parts.append(count * float(q) ** (-a * (top + i)))
    return math.fsum(parts)


def kernel_by_horocycles(params: Params, v: Vertex, x: Vertex, M: int = 80) -> float:
    """The symmetric horocycle series for the kernel, summed for m up to M."""
    q, a = params.q, params.alpha
    C, _, _ = series_coefficients(params)
    c = confluent(v, x).index
    terms = []
    for m in range(-c - 1, M + 1):
        coef = _partial(float(q), m + v.index, -1) * _partial(float(q), m + x.index, -1)
        if coef == 0.0:
            continue
        inv_b = 1.0 / (float(q) ** (a * (m + 1)) * C)
        s, t = ancestor(v, -m), ancestor(x, -m)
        g = (q - 1) / q if s == t else -1.0 / q
        terms.append(inv_b * coef * g)
    return math.fsum(terms)


def _normalized(params: Params, idx: BasisIndex, x: Vertex) -> float:
    return eval_basis(params, idx, x) / math.sqrt(norm_basis(params, idx))


def truncated_gram_entry(params: Params, a: BasisIndex, b: BasisIndex, depth: int = 40) -> tuple[float, float]:
    """sum of g_a g_b sigma over the first ``depth`` levels of the common support, plus remainder bound.

    Both functions are constant on each successor branch of the deeper
    generator at a fixed level, so each level costs q evaluations.
    """
    if in_sector(b.v, a.v):
        u = b.v
    elif in_sector(a.v, b.v):
        u = a.v
    else:
        return 0.0, 0.0
    q, al = params.q, params.alpha
    terms = []
    for n in range(1, depth + 1):
        weight = float(q) ** (n - 1) * float(q) ** (-al * (u.index + n))
        for s in successors(u, q):
            z = s
            for _ in range(n - 1):
                z = child(z, 0)
            terms.append(weight * _normalized(params, a, z) * _normalized(params, b, z))
    qf = float(q)
    bound = (qf / (qf - 1)) ** 2 / math.sqrt(norm_basis(params, a) * norm_basis(params, b))
    tail = bound * qf ** (-al * u.index) * qf ** ((depth + 1) * (1 - al)) / (1 - qf ** (1 - al))
    return math.fsum(terms), tail


def enumerated_gram_entry(params: Params, a: BasisIndex, b: BasisIndex, depth: int) -> float:
    """Same truncated sum as truncated_gram_entry, vertex by vertex."""
    if in_sector(b.v, a.v):
        u = b.v
    elif in_sector(a.v, b.v):
        u = a.v
    else:
        return 0.0
    q, al = params.q, params.alpha
    return math.fsum(
        _normalized(params, a, x) * _normalized(params, b, x) * float(q) ** (-al * x.index)
        for x in iter_sector(u, depth, q)
        if x != u
    )
