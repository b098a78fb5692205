"""Orthonormal basis, coefficient family and reproducing kernel of the Bergman space B^2_alpha."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .harmonic import Evaluable
from .series import inv_partial
from .tree import (
    Params,
    Vertex,
    ancestor,
    child_digit,
    confluent,
    in_sector,
    pred_power,
    successors,
)


_ROUNDING = 1e-14


@dataclass(frozen=True)
class Coefficients:
    """b(n) = q^(-alpha n) C and b'(n) = q^(-alpha n) Cp."""

    q: int
    alpha: float
    C: float
    Cp: float

    def b(self, n: int) -> float:
        return float(self.q) ** (-self.alpha * n) * self.C

    def bp(self, n: int) -> float:
        return float(self.q) ** (-self.alpha * n) * self.Cp

    def d(self, n: int, k: int) -> float:
        return inv_partial(self.q, n) / self.b(k - n - 1)


@lru_cache(maxsize=None)
def coefficients(params: Params) -> Coefficients:
    q, a = float(params.q), params.alpha
    g1 = q ** (1 - a) / (1 - q ** (1 - a))
    g0 = q ** (-a) / (1 - q ** (-a))
    gm = q ** (-1 - a) / (1 - q ** (-1 - a))
    denom = (1 - 1 / q) * (q - 1)
    C = (g1 - 2 * g0 + gm) / denom
    Cp = (g1 / q - (1 + 1 / q) * g0 + gm) / denom
    return Coefficients(params.q, params.alpha, C, Cp)


@lru_cache(maxsize=None)
def helmert_basis(q: int) -> tuple[tuple[float, ...], ...]:
    """Real orthonormal basis of the zero-sum vectors in R^q (Helmert contrasts)."""
    if q < 2:
        raise ValueError("q must be >= 2")
    rows = []
    for j in range(1, q):
        s = 1.0 / math.sqrt(j * (j + 1))
        rows.append(tuple(s if i < j else (-j * s if i == j else 0.0) for i in range(q)))
    return tuple(rows)


@dataclass(frozen=True, order=True)
class BasisIndex:
    v: Vertex
    j: int


def _check_index(params: Params, idx: BasisIndex):
    if not 1 <= idx.j <= params.q - 1:
        raise ValueError(f"basis index j={idx.j} outside 1..{params.q - 1}")


def eval_basis(params: Params, idx: BasisIndex, x: Vertex) -> float:
    """g_{v,j}(x), the unnormalised basis function."""
    _check_index(params, idx)
    v = idx.v
    if x == v or not in_sector(x, v):
        return 0.0
    s = ancestor(x, v.index + 1)
    a = helmert_basis(params.q)[idx.j - 1]
    return inv_partial(params.q, x.index - v.index - 1) * a[child_digit(s)]


def norm_basis(params: Params, idx: BasisIndex) -> float:
    """Squared B^2 norm of g_{v,j}; equals b(<v>)."""
    _check_index(params, idx)
    return coefficients(params).b(idx.v.index)


def eval_normalized(params: Params, idx: BasisIndex, x: Vertex) -> float:
    return eval_basis(params, idx, x) / math.sqrt(norm_basis(params, idx))


class HarmonicCombo:
    """Finite combination of normalised basis functions."""

    __slots__ = ("params", "terms")

    def __init__(self, params: Params, terms: Mapping[BasisIndex, float] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[BasisIndex, float] = {}
        for idx, c in items:
            _check_index(params, idx)
            c = clean.get(idx, 0.0) + float(c)
            clean[idx] = c
        self.params = params
        self.terms = {k: v for k, v in sorted(clean.items()) if v != 0.0}

    def __call__(self, x: Vertex) -> float:
        return math.fsum(c * eval_normalized(self.params, idx, x) for idx, c in self.terms.items())

    def __repr__(self) -> str:
        return f"HarmonicCombo({len(self.terms)} terms)"

    def norm(self) -> float:
        return math.sqrt(inner_product(self, self))

    def min_generator_index(self) -> int | None:
        return min((idx.v.index for idx in self.terms), default=None)


def inner_product(f: HarmonicCombo, g: HarmonicCombo) -> float:
    """<f, g> in B^2_alpha, from orthonormality of the basis."""
    return math.fsum(c * g.terms[idx] for idx, c in f.terms.items() if idx in g.terms)


def inner_product_sp(params: Params, f: Evaluable, y: Vertex, gvals: Sequence[float] | Mapping[Vertex, float]) -> float:
    """<f, g^H_{<y>}> for a zero-sum g on S(y), given f harmonic in B^2.

    ``gvals`` is either a sequence in canonical successor order or a mapping
    from successors of y to values.
    """
    succ = successors(y, params.q)
    if isinstance(gvals, Mapping):
        vals = [float(gvals.get(z, 0.0)) for z in succ]
    else:
        vals = [float(v) for v in gvals]
        if len(vals) != params.q:
            raise ValueError(f"expected {params.q} successor values, got {len(vals)}")
    scale = max(1.0, max(abs(v) for v in vals))
    if abs(math.fsum(vals)) > 1e-12 * scale * params.q:
        raise ValueError("successor values must sum to zero")
    co = coefficients(params)
    n = y.index
    fy = f(y)
    return math.fsum(g * (f(z) * co.b(n) - fy * co.bp(n)) for z, g in zip(succ, vals))


def gamma(q: int, u: Vertex, s: Vertex, t: Vertex) -> float:
    """Reproducing kernel Gamma_u(s, t) of the zero-sum space on S(u), extended to U_u."""
    if s == u or t == u or not in_sector(s, u) or not in_sector(t, u):
        return 0.0
    k = u.index + 1
    if ancestor(s, k) == ancestor(t, k):
        return (q - 1) / q
    return -1.0 / q


def gamma_ext(params: Params, n: int, v: Vertex, x: Vertex) -> float:
    """Harmonic extension of Gamma_{p^{n+1}(v)}(p^n(v), .) evaluated at x."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q = params.q
    u = pred_power(v, n)
    w = pred_power(u, 1)
    if x == w or not in_sector(x, w):
        return 0.0
    weight = inv_partial(q, x.index - u.index)
    return weight * ((q - 1) / q if in_sector(x, u) else -1.0 / q)


def gamma_ext_combo(params: Params, n: int, v: Vertex) -> HarmonicCombo:
    """Gamma^H_{n,v} expanded in the normalised basis at p^{n+1}(v)."""
    u = pred_power(v, n)
    w = pred_power(u, 1)
    digit = child_digit(u)
    root_b = math.sqrt(coefficients(params).b(w.index))
    terms = {BasisIndex(w, j + 1): a[digit] * root_b for j, a in enumerate(helmert_basis(params.q))}
    return HarmonicCombo(params, terms)


def gamma_ext_inner(params: Params, f: Evaluable, n: int, v: Vertex) -> float:
    """<f, Gamma^H_{n,v}> from the three values of f on [p^n(v), omega)."""
    q = params.q
    u0, u1, u2 = (pred_power(v, n + i) for i in range(3))
    bw = coefficients(params).b(u1.index)
    return bw * (f(u0) - (q + 1) / q * f(u1) + f(u2) / q)


def _gamma_values(params: Params, n: int, v: Vertex) -> tuple[Vertex, list[float]]:
    u = pred_power(v, n)
    w = pred_power(u, 1)
    return w, [gamma(params.q, w, u, z) for z in successors(w, params.q)]


def kernel(params: Params, v: Vertex, x: Vertex) -> float:
    """K_alpha(v, x) in closed form.

    The series over horocycles is split at the confluent c = <v ^ x>: one boundary
    term where the paths to v and x leave c through different successors, then a
    geometric tail where both paths coincide.
    """
    q = float(params.q)
    a = params.alpha
    co = coefficients(params)
    w = confluent(v, x)
    c = w.index
    A = v.index - c + 1
    B = x.index - c + 1
    r = 1.0 / q
    bracket = (
        1.0 / (1.0 - q**-a)
        - (r**A + r**B) / (1.0 - q ** (-a - 1))
        + r ** (A + B) / (1.0 - q ** (-a - 2))
    )
    main = (q - 1) / q * q ** (a * (c - 1)) / ((1.0 - r) ** 2 * co.C) * bracket
    coef = inv_partial(q, A - 2) * inv_partial(q, B - 2)
    if coef == 0.0:
        return main
    # both v and x sit strictly below the confluent here
    g = gamma(params.q, w, ancestor(v, c + 1), ancestor(x, c + 1))
    return main + coef * g / co.b(c)


def kernel_series(params: Params, v: Vertex, x: Vertex, N: int) -> tuple[float, float]:
    """Partial sum over n <= N of d(n, <v>) Gamma^H_{n,v}(x), with a bound on the remainder."""
    if N < 0:
        raise ValueError("N must be >= 0")
    co = coefficients(params)
    q = float(params.q)
    a = params.alpha
    k = v.index
    terms = [co.d(n, k) * gamma_ext(params, n, v, x) for n in range(N + 1)]
    partial = math.fsum(terms)
    # |Gamma^H| <= 1 and d(n, k) <= q/(q-1) * q^(alpha(k-n-1)) / C; the bound is
    # nearly attained, so it carries an allowance for rounding in both formulas
    tail = q / (q - 1) / co.C * q ** (a * (k - 1)) * q ** (-a * (N + 1)) / (1 - q**-a)
    tail += _ROUNDING * (math.fsum(abs(t) for t in terms) + abs(partial))
    return partial, tail


def basis_expansion_partial(params: Params, v: Vertex, x: Vertex, N: int) -> float:
    """sum_{n<=N} b(<v>-n)^-1 sum_j g_{p^n v, j}(v) g_{p^n v, j}(x)."""
    co = coefficients(params)
    total = []
    for n in range(N + 1):
        w = pred_power(v, n)
        inv_b = 1.0 / co.b(w.index)
        for j in range(1, params.q):
            idx = BasisIndex(w, j)
            gv = eval_basis(params, idx, v)
            if gv:
                total.append(inv_b * gv * eval_basis(params, idx, x))
    return math.fsum(total)


def reproduce(f: HarmonicCombo, v: Vertex) -> float:
    """<f, K_v>, summed term by term over the kernel series.

    Each term <f, Gamma^H_{n,v}> is computed from values of f on S(p^{n+1}(v));
    those vanish once p^{n+1}(v) climbs above every generator in f.
    """
    params = f.params
    top = f.min_generator_index()
    if top is None:
        return 0.0
    co = coefficients(params)
    k = v.index
    terms = []
    for n in range(max(0, k - top + 1)):
        w, vals = _gamma_values(params, n, v)
        terms.append(co.d(n, k) * inner_product_sp(params, f, w, vals))
    return math.fsum(terms)


def gram_closed_form(params: Params, indices: Sequence[BasisIndex]) -> list[list[float]]:
    """Gram matrix of the normalised basis functions, every entry through inner_product_sp."""
    helm = helmert_basis(params.q)
    norms = [math.sqrt(norm_basis(params, i)) for i in indices]
    rows = []
    for a, na in zip(indices, norms):
        fa = lambda x, a=a: eval_basis(params, a, x)
        rows.append([
            inner_product_sp(params, fa, b.v, helm[b.j - 1]) / (na * nb)
            for b, nb in zip(indices, norms)
        ])
    return rows
