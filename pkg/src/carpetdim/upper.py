"""Upper bounds on the theta-intermediate dimension.

Two-scale bound: box - Delta0(theta) (1-theta) / log n, where Delta0 solves
theta * Delta = I(log(N/M) - Delta) on (0, log(N/M) - mean log fibre count).
Three-scale bound: constrained search over (Delta1, Delta2, eta) minimizing
the maximum of the four cover-part exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .carpet import Carpet, has_uniform_fibres
from .dimensions import box_dim
from .errors import SearchFailed, ThetaOutOfRange, UniformFibres
from .rate import RateFunction

_DELTA_TOL = 1e-12
_MAX_ITER = 200
_THETA_TOL = 1e-12


@dataclass(frozen=True)
class Delta0Solution:
    theta: float
    delta0: float
    residual: float


@dataclass(frozen=True)
class GridSpec:
    points: int = 24
    refine: int = 1


@dataclass(frozen=True)
class ThreeScaleParams:
    delta1: float
    delta2: float
    eta: float
    exponents: tuple[float, float, float, float]
    bound: float


def _require_nonuniform(carpet: Carpet) -> None:
    if has_uniform_fibres(carpet):
        raise UniformFibres("carpet has uniform vertical fibres")


def solve_delta0(carpet: Carpet, theta: float,
                 rate_fn: RateFunction | None = None) -> Delta0Solution:
    """Bisection on h(D) = theta*D - I(c - D), strictly increasing on (0, width)."""
    _require_nonuniform(carpet)
    if theta < carpet.r - _THETA_TOL or theta > 1.0 + _THETA_TOL:
        raise ThetaOutOfRange(f"theta={theta!r} outside [{carpet.r!r}, 1]")
    theta = min(max(theta, carpet.r), 1.0)
    rf = rate_fn if rate_fn is not None else RateFunction(carpet)
    c = carpet.c
    width = c - carpet.mean_log_n
    lo, hi = 0.0, width
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if theta * mid - rf(c - mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _DELTA_TOL:
            break
    delta = 0.5 * (lo + hi)
    if theta < 1.0:
        residual = (1.0 - theta) * delta - (1.0 / theta - 1.0) * rf(c - delta)
    else:
        residual = delta - rf(c - delta)
    return Delta0Solution(theta=theta, delta0=delta, residual=residual)


def upper_bound(carpet: Carpet, theta: float,
                rate_fn: RateFunction | None = None) -> float:
    """Two-scale upper bound; plateaus below log_n m, equals box at theta=1."""
    if theta < -_THETA_TOL or theta > 1.0 + _THETA_TOL:
        raise ThetaOutOfRange(f"theta={theta!r} outside [0, 1]")
    theta = min(max(theta, 0.0), 1.0)
    box = box_dim(carpet)
    if has_uniform_fibres(carpet) or theta == 1.0:
        return box
    eff = max(theta, carpet.r)
    sol = solve_delta0(carpet, eff, rate_fn=rate_fn)
    return box - sol.delta0 * (1.0 - eff) / carpet.logn


def upper_slope_at_one(carpet: Carpet) -> float:
    """Limit slope of the two-scale bound at theta = 1; strictly positive."""
    _require_nonuniform(carpet)
    return solve_delta0(carpet, 1.0).delta0 / carpet.logn


def _log_uniform(lo: float, hi: float, k: int) -> np.ndarray:
    """k interior points of (lo, hi), geometrically spaced; requires lo > 0."""
    t = (np.arange(k) + 1.0) / (k + 1.0)
    return lo * (hi / lo) ** t


def improved_upper(carpet: Carpet, theta: float,
                   search: GridSpec = GridSpec()) -> ThreeScaleParams:
    """Three-scale bound: grid + one refinement pass over (Delta1, Delta2, eta).

    Exponents per candidate:
      e1 = box - Delta1 (1-theta)/log n
      e2 = box - (Delta0 + I(c-Delta1)) (1-theta)/log n
      e3 = box - I(c-Delta2) (1/theta-1)/log n
      e4 = box - Delta2 (1-eta)/log n - I(c-Delta0) (1/theta-1) eta/log n
    Returns the lexicographically smallest minimizer of max(e1..e4).
    """
    _require_nonuniform(carpet)
    if theta < carpet.r - _THETA_TOL or theta >= 1.0:
        raise ThetaOutOfRange(f"theta={theta!r} outside [{carpet.r!r}, 1)")
    theta = max(theta, carpet.r)
    rf = RateFunction(carpet)
    box = box_dim(carpet)
    logn = carpet.logn
    c = carpet.c
    width = c - carpet.mean_log_n
    d0 = solve_delta0(carpet, theta, rate_fn=rf).delta0
    thm = box - d0 * (1.0 - theta) / logn
    rate_d0 = rf(c - d0)
    k = search.points

    def evaluate(b1: tuple[float, float], b2: tuple[float, float],
                 b3: tuple[float, float]):
        d1s = _log_uniform(*b1, k)
        d2s = _log_uniform(*b2, k)
        etas = _log_uniform(*b3, k)
        i1 = np.array([rf(c - d) for d in d1s])
        i2 = np.array([rf(c - d) for d in d2s])
        e1 = box - d1s * (1.0 - theta) / logn
        e2 = box - (d0 + i1) * (1.0 - theta) / logn
        e3 = box - i2 * (1.0 / theta - 1.0) / logn
        e4 = (box - np.outer(d2s, 1.0 - etas) / logn
              - rate_d0 * (1.0 / theta - 1.0) * etas[None, :] / logn)
        val = np.maximum(np.maximum(e1, e2)[:, None, None],
                         np.maximum(e3[:, None], e4)[None, :, :])
        flat = int(np.argmin(val))
        i, j, l = np.unravel_index(flat, val.shape)
        exps = (float(e1[i]), float(e2[i]), float(e3[j]), float(e4[j, l]))
        return (float(val[i, j, l]), (float(d1s[i]), float(d2s[j]), float(etas[l])),
                exps, (d1s, d2s, etas), (i, j, l))

    box1 = (d0, width)
    box2 = ((1.0 - theta) * d0, d0)
    box3 = (theta, 1.0)
    best = evaluate(box1, box2, box3)
    for _ in range(search.refine):
        (_, _, _, axes, idx) = best

        def cell(xs: np.ndarray, i: int, outer: tuple[float, float]):
            lo = xs[i - 1] if i > 0 else outer[0]
            hi = xs[i + 1] if i + 1 < len(xs) else outer[1]
            return (float(lo), float(hi))

        cand = evaluate(cell(axes[0], idx[0], box1),
                        cell(axes[1], idx[1], box2),
                        cell(axes[2], idx[2], box3))
        if cand[0] < best[0]:
            best = cand
    value, (d1, d2, eta), exps, _, _ = best
    if not value < thm:
        raise SearchFailed(
            f"no grid point improved on the two-scale bound {thm!r}")
    return ThreeScaleParams(delta1=d1, delta2=d2, eta=eta,
                            exponents=exps, bound=value)
