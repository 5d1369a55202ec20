"""Moment functions of i.i.d. symbol draws and their certificates.

f(params, P) is the expected ell-plurality of L i.i.d. draws from P over
{1,...,q}; g restricts f to the two-block sliced family P_w that spreads
mass w uniformly over the first q-ell symbols and 1-w over the last ell.
Gradient, Hessian and g'' come from composition closed forms (one degree
down per derivative), never from finite differences; the numerical
certificates (Schur, convexity, monotonicity) only ever evaluate those
closed forms on grids or sampled distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .compositions import composition_table, max_ell_partial_sum
from .params import Params

__all__ = [
    "ConvexityCertificate",
    "Distribution",
    "G_ell",
    "MonotonicityCertificate",
    "SchurCertificate",
    "SlicedDistribution",
    "certify_convexity",
    "certify_monotonicity_g",
    "certify_schur",
    "f",
    "f_gradient",
    "f_hessian",
    "g",
    "g_prime",
    "g_second",
    "lipschitz_g",
    "schur_ostrowski_value",
]

PROB_TOL = 1e-12


@dataclass(frozen=True)
class Distribution:
    """Probability vector over {1,...,q}; validates to within 1e-12."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        ps = tuple(float(p) for p in self.probs)
        if len(ps) < 2:
            raise ValueError("need at least a binary alphabet")
        if any(p < -PROB_TOL for p in ps):
            raise ValueError(f"negative probability in {ps}")
        if abs(math.fsum(ps) - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {math.fsum(ps)!r}, not 1")
        object.__setattr__(self, "probs", tuple(max(p, 0.0) for p in ps))

    @classmethod
    def uniform(cls, q: int) -> "Distribution":
        return cls((1.0 / q,) * q)

    @property
    def q(self) -> int:
        return len(self.probs)

    def as_array(self) -> np.ndarray:
        return np.array(self.probs, dtype=np.float64)


@dataclass(frozen=True)
class SlicedDistribution:
    """Two-block law: w/(q-ell) on symbols 1..q-ell, (1-w)/ell on the rest."""

    q: int
    ell: int
    w: float

    def __post_init__(self) -> None:
        if self.q < 2 or not 1 <= self.ell <= self.q - 1:
            raise ValueError(f"bad block shape q={self.q}, ell={self.ell}")
        if not 0.0 <= self.w <= 1.0:
            raise ValueError(f"need w in [0,1], got {self.w}")

    def distribution(self) -> Distribution:
        return Distribution(_sliced_probs(self.q, self.ell, self.w))


def _sliced_probs(q: int, ell: int, w: float) -> tuple[float, ...]:
    head = w / (q - ell)
    tail = (1.0 - w) / ell
    return (head,) * (q - ell) + (tail,) * ell


DistLike = Union[Distribution, Sequence[float], np.ndarray]


def _prob_vector(q: int, dist: DistLike) -> np.ndarray:
    """Coerce to a length-q non-negative vector.

    The sum is deliberately not checked: the closed forms are polynomials
    and callers (finite-difference checks in particular) evaluate them
    slightly off the simplex.
    """
    if isinstance(dist, Distribution):
        p = dist.as_array()
    else:
        p = np.asarray(dist, dtype=np.float64)
    if p.shape != (q,):
        raise ValueError(f"need a length-{q} vector, got shape {p.shape}")
    if np.any(p < -PROB_TOL):
        raise ValueError("negative entries in probability vector")
    return np.clip(p, 0.0, None)


def _power_products(p: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    # 0.0 ** 0.0 == 1.0 under numpy, which is the convention needed here
    return np.prod(p[np.newaxis, :] ** exponents, axis=1)


def f(params: Params, dist: DistLike) -> float:
    """Expected ell-plurality of L i.i.d. draws from dist."""
    tbl = composition_table(params.q, params.L, params.ell)
    p = _prob_vector(params.q, dist)
    return float(np.dot(tbl.multinomials * tbl.top_ell, _power_products(p, tbl.exponents)))


@lru_cache(maxsize=None)
def _gradient_table(q: int, ell: int, L: int) -> np.ndarray:
    """top_ell(a + e_j) for a in A_{q,L-1}, shape (K, q)."""
    tbl = composition_table(q, L - 1, ell)
    K = tbl.counts.shape[0]
    plus = np.empty((K, q), dtype=np.float64)
    for k in range(K):
        row = list(tbl.counts[k])
        for j in range(q):
            row[j] += 1
            plus[k, j] = max_ell_partial_sum(row, ell)
            row[j] -= 1
    plus.flags.writeable = False
    return plus


def f_gradient(params: Params, dist: DistLike) -> np.ndarray:
    """Gradient of f in P, via the degree-(L-1) closed form."""
    q, ell, L = params.q, params.ell, params.L
    tbl = composition_table(q, L - 1, ell)
    plus = _gradient_table(q, ell, L)
    p = _prob_vector(q, dist)
    weights = tbl.multinomials * _power_products(p, tbl.exponents)
    return L * (weights @ plus)


@lru_cache(maxsize=None)
def _hessian_table(q: int, ell: int, L: int) -> np.ndarray:
    """top_ell(a + e_i + e_j) for a in A_{q,L-2}, shape (K, q, q)."""
    if L < 2:
        raise ValueError(f"need L >= 2, got {L}")
    tbl = composition_table(q, L - 2, ell)
    K = tbl.counts.shape[0]
    plus2 = np.empty((K, q, q), dtype=np.float64)
    for k in range(K):
        row = list(tbl.counts[k])
        for i in range(q):
            row[i] += 1
            for j in range(i, q):
                row[j] += 1
                val = max_ell_partial_sum(row, ell)
                plus2[k, i, j] = val
                plus2[k, j, i] = val
                row[j] -= 1
            row[i] -= 1
    plus2.flags.writeable = False
    return plus2


def f_hessian(params: Params, dist: DistLike) -> np.ndarray:
    """Hessian of f in P, via the degree-(L-2) closed form."""
    q, ell, L = params.q, params.ell, params.L
    tbl = composition_table(q, L - 2, ell)
    plus2 = _hessian_table(q, ell, L)
    p = _prob_vector(q, dist)
    weights = tbl.multinomials * _power_products(p, tbl.exponents)
    return L * (L - 1) * np.einsum("k,kij->ij", weights, plus2)


def _block_vector(q: int, ell: int) -> np.ndarray:
    """Derivative of the sliced law in w: 1/(q-ell) on the head, -1/ell on the tail."""
    v = np.empty(q, dtype=np.float64)
    v[: q - ell] = 1.0 / (q - ell)
    v[q - ell :] = -1.0 / ell
    return v


def g(params: Params, w: float) -> float:
    """f along the sliced family; g(0) = L, g(w*) = f(uniform)."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"need w in [0,1], got {w}")
    return f(params, np.array(_sliced_probs(params.q, params.ell, w)))


def g_prime(params: Params, w: float) -> float:
    """Chain rule along the slice: <grad f(P_w), dP_w/dw>."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"need w in [0,1], got {w}")
    grad = f_gradient(params, np.array(_sliced_probs(params.q, params.ell, w)))
    return float(grad @ _block_vector(params.q, params.ell))


def G_ell(params: Params, a: Sequence[int]) -> float:
    """Quadratic form v^T M(a) v with M(a)_{ij} = top_ell(a + e_i + e_j).

    v is the sliced direction (1/(q-ell) head, -1/ell tail).  Not
    sign-definite in general: G_2((1,0,0)) = -1/2 for q=3.
    """
    q, ell = params.q, params.ell
    row = [int(x) for x in a]
    if len(row) != q:
        raise ValueError(f"need a length-{q} composition, got {len(row)}")
    if any(x < 0 for x in row):
        raise ValueError("composition entries must be non-negative")
    M = np.empty((q, q), dtype=np.float64)
    for i in range(q):
        row[i] += 1
        for j in range(i, q):
            row[j] += 1
            M[i, j] = M[j, i] = max_ell_partial_sum(row, ell)
            row[j] -= 1
        row[i] -= 1
    v = _block_vector(q, ell)
    return float(v @ M @ v)


@lru_cache(maxsize=None)
def _g_second_table(q: int, ell: int, L: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-composition pieces of g'': tail sums s(a), coefficients, G values."""
    tbl = composition_table(q, L - 2, ell)
    plus2 = _hessian_table(q, ell, L)
    v = _block_vector(q, ell)
    tails = tbl.counts[:, q - ell :].sum(axis=1).astype(np.int64)
    gvals = np.einsum("i,kij,j->k", v, plus2, v)
    heads = (L - 2 - tails).astype(np.int64)
    for arr in (tails, heads, gvals):
        arr.flags.writeable = False
    return heads, tails, tbl.multinomials * gvals


def g_second(params: Params, w: float) -> float:
    """Closed-form second derivative of g.

    g''(w) = L(L-1) sum_a C(L-2,a) (w/(q-ell))^{L-2-s(a)} ((1-w)/ell)^{s(a)} G_ell(a)
    with s(a) the mass of a on the tail block.  Matches v^T Hess f(P_w) v.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"need w in [0,1], got {w}")
    q, ell, L = params.q, params.ell, params.L
    heads, tails, coef = _g_second_table(q, ell, L)
    head_base = w / (q - ell)
    tail_base = (1.0 - w) / ell
    terms = coef * head_base**heads * tail_base**tails
    return float(L * (L - 1) * terms.sum())


def schur_ostrowski_value(params: Params, dist: DistLike, i: int, j: int) -> float:
    """(p_i - p_j)(d_i f - d_j f); non-negative iff the Schur criterion holds at (i,j)."""
    q = params.q
    if not (0 <= i < q and 0 <= j < q) or i == j:
        raise ValueError(f"need distinct indices in 0..{q-1}, got i={i}, j={j}")
    p = _prob_vector(q, dist)
    grad = f_gradient(params, p)
    return float((p[i] - p[j]) * (grad[i] - grad[j]))


# --- certificates ---------------------------------------------------------

CERT_TOL = 1e-9


@dataclass(frozen=True)
class SchurCertificate:
    params: Params
    samples: int
    seed: int
    min_value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.min_value >= -self.tolerance


def certify_schur(
    params: Params, samples: int = 200, seed: int = 1, tolerance: float = CERT_TOL
) -> SchurCertificate:
    """Minimize the Schur-Ostrowski product over sampled distributions.

    Samples are normalized standard exponentials (flat Dirichlet) from a
    seeded PCG64 stream, so certificates are reproducible.
    """
    if samples < 1:
        raise ValueError(f"need samples >= 1, got {samples}")
    q = params.q
    rng = np.random.default_rng(seed)
    worst = math.inf
    for _ in range(samples):
        e = rng.standard_exponential(q)
        p = e / e.sum()
        grad = f_gradient(params, p)
        dp = p[:, None] - p[None, :]
        dg = grad[:, None] - grad[None, :]
        vals = dp * dg
        vals[np.diag_indices(q)] = np.inf
        worst = min(worst, float(vals.min()))
    return SchurCertificate(params, samples, seed, worst, tolerance)


@dataclass(frozen=True)
class ConvexityCertificate:
    params: Params
    lo: float
    hi: float
    grid_points: int
    min_value: float
    argmin_w: float
    violations: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def default_interval(params: Params) -> tuple[float, float]:
    """Certification interval: [0,(q-1)/q] for ell = 1, else [0,1]."""
    if params.ell == 1:
        return (0.0, (params.q - 1) / params.q)
    return (0.0, 1.0)


def certify_convexity(
    params: Params,
    interval: tuple[float, float] | None = None,
    grid_points: int = 1001,
    tolerance: float = CERT_TOL,
) -> ConvexityCertificate:
    """Grid-minimize g'' and count dips below -tolerance."""
    if grid_points < 2:
        raise ValueError(f"need grid_points >= 2, got {grid_points}")
    lo, hi = interval if interval is not None else default_interval(params)
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"bad interval [{lo}, {hi}]")
    ws = np.linspace(lo, hi, grid_points)
    vals = np.array([g_second(params, w) for w in ws])
    k = int(vals.argmin())
    violations = int((vals < -tolerance).sum())
    return ConvexityCertificate(
        params, lo, hi, grid_points, float(vals[k]), float(ws[k]), violations, tolerance
    )


@dataclass(frozen=True)
class MonotonicityCertificate:
    params: Params
    grid_points: int
    w_star: float
    max_increase_left: float
    max_decrease_right: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            self.max_increase_left <= self.tolerance
            and self.max_decrease_right <= self.tolerance
        )


def certify_monotonicity_g(
    params: Params, grid_points: int = 1001, tolerance: float = CERT_TOL
) -> MonotonicityCertificate:
    """Check g is non-increasing left of w* = (q-ell)/q and non-decreasing right."""
    if grid_points < 3:
        raise ValueError(f"need grid_points >= 3, got {grid_points}")
    wstar = params.w_star
    ws = np.unique(np.append(np.linspace(0.0, 1.0, grid_points), wstar))
    vals = np.array([g(params, w) for w in ws])
    diffs = np.diff(vals)
    left = ws[1:] <= wstar + 1e-15
    right = ws[:-1] >= wstar - 1e-15
    max_inc = float(diffs[left].max()) if left.any() else 0.0
    max_dec = float((-diffs[right]).max()) if right.any() else 0.0
    return MonotonicityCertificate(params, len(ws), wstar, max_inc, max_dec, tolerance)


@lru_cache(maxsize=None)
def _lipschitz_cached(q: int, ell: int, L: int, grid_points: int) -> float:
    params = Params(q, ell, L)
    _, hi = default_interval(params)
    ws = np.linspace(0.0, hi, grid_points)
    return max(abs(g_prime(params, w)) for w in ws)


def lipschitz_g(params: Params, grid_points: int = 10_000) -> float:
    """max |g'| over the certification interval, on a dense grid."""
    if grid_points < 2:
        raise ValueError(f"need grid_points >= 2, got {grid_points}")
    return _lipschitz_cached(params.q, params.ell, params.L, grid_points)
