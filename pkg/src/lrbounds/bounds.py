"""Zero-rate thresholds, rate bounds, entropies, and auxiliary constants.

The threshold p* and its sliced generalization come from the moment
functions in analysis; the lower rate bound is the random-coding exponent
obtained by exponential tilting of the average-radius law, the upper bound
is the entropy inversion of the sliced threshold.  Also here: exact and
estimated ball volumes, covering-size bounds, the explicit list-size
constants, and published comparison curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .analysis import g, lipschitz_g
from .compositions import composition_table, enumerate_compositions, max_ell_partial_sum, multinomial
from .params import Params

__all__ = [
    "BoundCurve",
    "FixedPointResult",
    "PlotkinConstants",
    "ball_volume",
    "ball_volume_bounds",
    "comparison_gmrsw",
    "comparison_ry_binary4",
    "comparison_ry_qary3",
    "covering_size_bound",
    "covering_size_bound_lr",
    "eb_upper_bound_rate",
    "entropy_q",
    "entropy_q_ell",
    "eta_q",
    "lower_bound_rate",
    "lr_ball_volume",
    "lr_ball_volume_bounds",
    "mgf",
    "p_star_w",
    "plotkin_constants",
    "solve_lambda_star",
    "tilted_mean",
    "unconstrained_multiplier",
    "zero_rate_threshold",
]

LAMBDA_CAP = 1e6
LAMBDA_RESIDUAL = 1e-10


# --- thresholds -----------------------------------------------------------


@lru_cache(maxsize=None)
def _threshold_numerator(q: int, ell: int, L: int) -> int:
    """Exact integer sum of C(L,a) * (L - top_ell(a)) over A_{q,L}."""
    total = 0
    for a in enumerate_compositions(q, L):
        total += multinomial(L, a) * (L - max_ell_partial_sum(a, ell))
    return total


def zero_rate_threshold(params: Params) -> float:
    """p*(q, ell, L) = 1 - E[plurality_ell] / L under the uniform law.

    Computed as an exact integer ratio S / (L * q^L) before the single
    float division.
    """
    s = _threshold_numerator(params.q, params.ell, params.L)
    return s / (params.L * params.q**params.L)


def p_star_w(params: Params, w: float) -> float:
    """Sliced threshold 1 - g(w)/L; equals zero_rate_threshold at w = (q-ell)/q."""
    return 1.0 - g(params, w) / params.L


# --- entropies ------------------------------------------------------------


def _entropy(q: int, ell: int, w: float) -> float:
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"need w in [0,1], got {w}")
    lnq = math.log(q)
    out = 0.0
    if w > 0.0:
        out += w * math.log((q - ell) / w) / lnq
    if w < 1.0:
        out += (1.0 - w) * math.log(ell / (1.0 - w)) / lnq
    return out


def entropy_q(q: int, w: float) -> float:
    """q-ary entropy; 1 at w = (q-1)/q, 0 at w = 0."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    return _entropy(q, 1, w)


def entropy_q_ell(params: Params, w: float) -> float:
    """List-recovery entropy; log_q(ell) at 0, 1 at (q-ell)/q, log_q(q-ell) at 1."""
    return _entropy(params.q, params.ell, w)


# --- tilted average-radius law and the lower bound ------------------------


@lru_cache(maxsize=None)
def _radius_law(q: int, ell: int, L: int) -> tuple[np.ndarray, np.ndarray]:
    """Values rho(a) = 1 - top_ell(a)/L and multinomial weights over A_{q,L}."""
    tbl = composition_table(q, L, ell)
    rho = 1.0 - tbl.top_ell / L
    rho.flags.writeable = False
    return rho, tbl.multinomials


def mgf(params: Params, lam: float) -> float:
    """E[q^(-lam * rho)] under the uniform tuple law, computed stably."""
    if lam < 0.0:
        raise ValueError(f"need lam >= 0, got {lam}")
    rho, weights = _radius_law(params.q, params.ell, params.L)
    expo = -lam * rho * math.log(params.q)
    m = float(expo.max())
    return float(params.q) ** (-params.L) * math.exp(m) * float((weights * np.exp(expo - m)).sum())


def tilted_mean(params: Params, lam: float) -> float:
    """Mean of rho under the lam-tilted law; decreasing, equals p* at lam = 0."""
    if lam < 0.0:
        raise ValueError(f"need lam >= 0, got {lam}")
    rho, weights = _radius_law(params.q, params.ell, params.L)
    expo = -lam * rho * math.log(params.q)
    tw = weights * np.exp(expo - expo.max())
    return float((tw @ rho) / tw.sum())


@lru_cache(maxsize=None)
def _degenerate_count(q: int, ell: int, L: int) -> int:
    """Exact count of L-tuples whose symbols fit inside some ell-subset."""
    total = 0
    for a in enumerate_compositions(q, L):
        if max_ell_partial_sum(a, ell) == L:
            total += multinomial(L, a)
    return total


def _rate_at_zero(params: Params) -> float:
    s = _degenerate_count(params.q, params.ell, params.L)
    return (params.L - math.log(s) / math.log(params.q)) / (params.L - 1)


@dataclass(frozen=True)
class FixedPointResult:
    """Solution of tilted_mean(lam) = p.

    lambda_star is math.inf exactly when p = 0 (or the bracket cap 1e6 was
    exceeded, unreachable for representable p > 0); then the rate is the
    exact lam -> inf limit and residual the limiting gap p - 0.
    """

    lambda_star: float
    rate: float
    iterations: int
    residual: float


def solve_lambda_star(params: Params, p: float) -> FixedPointResult:
    """Bisect the decreasing tilted mean; residual <= 1e-10 unless at the marker."""
    pstar = zero_rate_threshold(params)
    if not 0.0 <= p < pstar:
        raise ValueError(f"need 0 <= p < p* = {pstar}, got {p}")
    if p == 0.0:
        return FixedPointResult(math.inf, _rate_at_zero(params), 0, 0.0)

    lo, hi = 0.0, 1.0
    iterations = 0
    while tilted_mean(params, hi) > p:
        lo, hi = hi, hi * 2.0
        iterations += 1
        if hi > LAMBDA_CAP:
            return FixedPointResult(math.inf, _rate_at_zero(params), iterations, p)

    lam = hi
    residual = abs(tilted_mean(params, lam) - p)
    while residual > LAMBDA_RESIDUAL and iterations < 500:
        mid = 0.5 * (lo + hi)
        r = tilted_mean(params, mid) - p
        if abs(r) <= residual:
            lam, residual = mid, abs(r)
        if r > 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    if residual > LAMBDA_RESIDUAL:
        raise ArithmeticError(
            f"lambda* bisection stalled at residual {residual:.3e} for p={p}"
        )
    lnq = math.log(params.q)
    exponent = -lam * p - math.log(mgf(params, lam)) / lnq
    rate = max(0.0, exponent / (params.L - 1))
    return FixedPointResult(lam, rate, iterations, residual)


def lower_bound_rate(params: Params, p: float) -> float:
    """Random-coding rate bound; positive below p*, exactly 0 from p* on."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"need p in [0,1], got {p}")
    if p >= zero_rate_threshold(params):
        return 0.0
    return solve_lambda_star(params, p).rate


# --- Elias-Bassalygo style upper bound ------------------------------------


def eb_upper_bound_rate(params: Params, p: float) -> float:
    """Entropy inversion of the sliced threshold on [0, (q-ell)/q].

    Defined for 0 <= p < p*; at p = 0 the exact endpoint log_q(q/ell) is
    returned (w = 0).
    """
    pstar = zero_rate_threshold(params)
    if not 0.0 <= p < pstar:
        raise ValueError(f"need 0 <= p < p* = {pstar}, got {p}")
    if p == 0.0:
        return 1.0 - math.log(params.ell) / math.log(params.q)
    lo, hi = 0.0, params.w_star
    for _ in range(200):
        if hi - lo <= 1e-15:
            break
        mid = 0.5 * (lo + hi)
        if p_star_w(params, mid) < p:
            lo = mid
        else:
            hi = mid
    w = 0.5 * (lo + hi)
    return max(0.0, 1.0 - entropy_q_ell(params, w))


# --- explicit list-size constants ------------------------------------------


@dataclass(frozen=True)
class PlotkinConstants:
    tau: float
    eps1: float
    lip: float
    log10_c: float
    m0: float


def plotkin_constants(params: Params, tau: float, eps1: float) -> PlotkinConstants:
    """Explicit constants (c, M0) for list sizes at p = (1 - tau) p*.

    c is reported as log10(c).  Requires 0 < tau < 1 and
    0 < eps1 <= L tau / (8 lip(g)).
    """
    if not 0.0 < tau < 1.0:
        raise ValueError(f"need 0 < tau < 1, got {tau}")
    q, ell, L = params.q, params.ell, params.L
    lip = lipschitz_g(params)
    cap = L * tau / (8.0 * lip)
    if not 0.0 < eps1 <= cap * (1.0 + 1e-12):
        raise ValueError(f"need 0 < eps1 <= L*tau/(8*lip) = {cap}, got {eps1}")
    log10_c = q**L * math.log10(6400.0 * L**6 * float(q) ** (4 * L - 2) / (2.0 * tau**2) + 1.0)
    pstar = zero_rate_threshold(params)
    m0_a = 2.0**11 * L**7 * float(q) ** (2 * L) / tau**2 + L - 2
    m0_b = (L - 1) * L * (pstar / ((1.0 / L) * lip * eps1) + 2.0) + 1.0
    return PlotkinConstants(tau, eps1, lip, log10_c, max(m0_a, m0_b))


def unconstrained_multiplier(params: Params, tau: float) -> float:
    """Size factor moving from weight-bounded to arbitrary codes.

    4 lip(g) / (L tau) + 1, with an extra factor q in the ell = 1 case
    (translation classes instead of weight shells).
    """
    if not 0.0 < tau < 1.0:
        raise ValueError(f"need 0 < tau < 1, got {tau}")
    base = 4.0 * lipschitz_g(params) / (params.L * tau) + 1.0
    return params.q * base if params.ell == 1 else base


# --- volumes and covering sizes --------------------------------------------


def ball_volume(q: int, n: int, radius: int) -> int:
    """Exact Hamming ball volume sum_{i<=r} C(n,i)(q-1)^i."""
    if q < 2 or n < 0:
        raise ValueError(f"need q >= 2, n >= 0, got q={q}, n={n}")
    if radius < 0:
        raise ValueError(f"need radius >= 0, got {radius}")
    r = min(radius, n)
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(r + 1))


def lr_ball_volume(params: Params, n: int, radius: int) -> int:
    """Exact volume of the lr-ball around an input-list tuple."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if radius < 0:
        raise ValueError(f"need radius >= 0, got {radius}")
    q, ell = params.q, params.ell
    r = min(radius, n)
    return sum(math.comb(n, i) * (q - ell) ** i * ell ** (n - i) for i in range(r + 1))


def _volume_bounds(q: int, ell: int, n: int, w: float) -> tuple[float, float]:
    nw = n * w
    if not (1.0 - 1e-9 <= nw <= n - 1.0 + 1e-9):
        raise ValueError(f"need 1 <= n*w <= n-1, got n*w = {nw}")
    h = _entropy(q, ell, w)
    bulk = float(q) ** (n * h)
    lo = bulk / math.sqrt(8.0 * nw * (1.0 - w))
    hi = nw * bulk
    return lo, hi


def ball_volume_bounds(q: int, n: int, w: float) -> tuple[float, float]:
    """Entropy sandwich for the radius-nw Hamming ball, valid for 1 <= nw <= n-1."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    return _volume_bounds(q, 1, n, w)


def lr_ball_volume_bounds(params: Params, n: int, w: float) -> tuple[float, float]:
    """Entropy sandwich for the radius-nw lr-ball, valid for 1 <= nw <= n-1."""
    return _volume_bounds(params.q, params.ell, n, w)


def covering_size_bound(q: int, n: int, w: float) -> float:
    """Greedy covering-code size: n ln(q) sqrt(8 n w (1-w)) q^{n(1-H_q(w))} + 1."""
    if q < 2 or n < 2:
        raise ValueError(f"need q >= 2, n >= 2, got q={q}, n={n}")
    if not 0.0 < w < 1.0:
        raise ValueError(f"need 0 < w < 1, got {w}")
    return n * math.log(q) * math.sqrt(8.0 * n * w * (1.0 - w)) * float(q) ** (
        n * (1.0 - entropy_q(q, w))
    ) + 1.0


def covering_size_bound_lr(params: Params, n: int, w: float) -> float:
    """Greedy cover of [q]^n by lr-balls around input-list tuples."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0.0 < w < 1.0:
        raise ValueError(f"need 0 < w < 1, got {w}")
    return n * math.log(params.q) * math.sqrt(8.0 * n * w * (1.0 - w)) * float(
        params.q
    ) ** (n * (1.0 - entropy_q_ell(params, w))) + 1.0


# --- published comparison curves -------------------------------------------


def eta_q(q: int, xs: Sequence[float]) -> float:
    """sum x_i log_q(1/x_i) + (1 - sum x_i) log_q(1/(1 - sum x_i))."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    vals = [float(x) for x in xs]
    if any(x < 0.0 for x in vals):
        raise ValueError(f"need non-negative entries, got {vals}")
    s = math.fsum(vals)
    if s > 1.0 + 1e-12:
        raise ValueError(f"entries sum to {s} > 1")
    lnq = math.log(q)
    out = 0.0
    for x in vals + [max(0.0, 1.0 - s)]:
        if x > 0.0:
            out -= x * math.log(x) / lnq
    return out


def comparison_gmrsw(p: float) -> float:
    """Binary (ell=1, L=3) curve (1/2)(2 - H_2(3p) - 3p log2(3)); needs 3p <= 1."""
    if not 0.0 <= 3.0 * p <= 1.0:
        raise ValueError(f"need 0 <= p <= 1/3, got {p}")
    return 0.5 * (2.0 - entropy_q(2, 3.0 * p) - 3.0 * p * math.log2(3.0))


def _eta_terms(xs: list[np.ndarray], lnq: float) -> np.ndarray:
    rest = 1.0
    out = 0.0
    for x in xs:
        rest = rest - x
        out = out - np.where(x > 0.0, x * np.log(np.where(x > 0.0, x, 1.0)), 0.0)
    rest = np.clip(rest, 0.0, None)
    out = out - np.where(rest > 0.0, rest * np.log(np.where(rest > 0.0, rest, 1.0)), 0.0)
    return out / lnq


def _grid_refine_min(
    objective: Callable[[np.ndarray, np.ndarray], np.ndarray], cap: float
) -> float:
    """Minimize over {x1, x2 >= 0, x1 + 2 x2 <= cap, x1 + x2 <= 1}.

    Coarse 1e-3 grid, then four local refinements down to 1e-7 around the
    incumbent.
    """
    if cap < 0.0:
        raise ValueError(f"need a non-negative cap, got {cap}")

    def scan(x1_lo, x1_hi, x2_lo, x2_hi, step):
        x1 = np.arange(x1_lo, x1_hi + step / 2, step)
        x2 = np.arange(x2_lo, x2_hi + step / 2, step)
        X1, X2 = np.meshgrid(x1, x2, indexing="ij")
        feasible = (X1 + 2.0 * X2 <= cap + 1e-12) & (X1 + X2 <= 1.0 + 1e-12)
        vals = np.where(feasible, objective(X1, X2), np.inf)
        k = np.unravel_index(int(np.argmin(vals)), vals.shape)
        return float(vals[k]), float(X1[k]), float(X2[k])

    step = 1e-3
    best, b1, b2 = scan(0.0, min(1.0, cap), 0.0, min(1.0, cap / 2.0), step)
    for _ in range(4):
        lo1, hi1 = max(0.0, b1 - 2 * step), min(min(1.0, cap), b1 + 2 * step)
        lo2, hi2 = max(0.0, b2 - 2 * step), min(min(1.0, cap / 2.0), b2 + 2 * step)
        step /= 10.0
        val, b1, b2 = scan(lo1, hi1, lo2, hi2, step)
        best = min(best, val)
    return best


def comparison_ry_binary4(p: float) -> float:
    """Binary (ell=1, L=4) curve: (1/3) min over the two-weight relaxation."""
    if p < 0.0:
        raise ValueError(f"need p >= 0, got {p}")
    ln2 = math.log(2.0)

    def obj(x1, x2):
        return 3.0 - _eta_terms([x1, x2], ln2) - 2.0 * x1 - x2 * math.log2(3.0)

    return _grid_refine_min(obj, 4.0 * p) / 3.0


def comparison_ry_qary3(q: int, p: float) -> float:
    """q-ary (ell=1, L=3) curve: (1/2) min over the two-weight relaxation."""
    if q < 3:
        raise ValueError(f"need q >= 3, got {q}")
    if p < 0.0:
        raise ValueError(f"need p >= 0, got {p}")
    lnq = math.log(q)
    c1 = math.log(3.0 * (q - 1)) / lnq
    c2 = math.log((q - 1) * (q - 2)) / lnq

    def obj(x1, x2):
        return 2.0 - _eta_terms([x1, x2], lnq) - c1 * x1 - c2 * x2

    return _grid_refine_min(obj, 3.0 * p) / 2.0


# --- emitted curves ---------------------------------------------------------


@dataclass(frozen=True)
class BoundCurve:
    """A (p, rate) table with strictly increasing p and non-negative rates."""

    kind: str
    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        ps = [p for p, _ in self.points]
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("p values must be strictly increasing")
        if any(r < 0.0 for _, r in self.points):
            raise ValueError("rates must be non-negative")
