"""Lower bounds on the theta-intermediate dimension.

The main bound maximizes psi over the mixing weight u in [0, 1], where u
stands for theta^t; the two linear bounds come from fixed vector choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .carpet import (Carpet, ProbVector, entropy, mcmullen_vectors,
                     uniform_vectors)
from .dimensions import box_dim, hausdorff_dim
from .errors import ThetaOutOfRange, UOutOfRange

_GRID = 257
_REFINE_TOL = 1e-10
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MixedVectors:
    u: float
    P: ProbVector
    QM: ProbVector
    Q: ProbVector


@dataclass(frozen=True)
class PsiEval:
    theta: float
    u: float
    dim_t: float
    psi: float


def _check_unit(name: str, v: float, exc) -> float:
    if v < -1e-15 or v > 1.0 + 1e-15:
        raise exc(f"{name}={v!r} outside [0, 1]")
    return min(max(v, 0.0), 1.0)


def _mix(u: float, a: ProbVector, b: ProbVector) -> tuple[float, ...]:
    return tuple(u * x + (1.0 - u) * y for x, y in zip(a, b))


def mixed_vectors(carpet: Carpet, u: float) -> MixedVectors:
    """Convex mixes of the uniform and dimension-optimal vectors at weight u."""
    u = _check_unit("u", u, UOutOfRange)
    p_tilde, q_tilde_m, q_over_n = uniform_vectors(carpet)
    p_hat, q_hat_m = mcmullen_vectors(carpet)
    return MixedVectors(
        u=u,
        P=ProbVector(_mix(u, p_tilde, p_hat)),
        QM=ProbVector(_mix(u, q_tilde_m, q_hat_m)),
        Q=ProbVector(_mix(u, q_over_n, p_hat)),
    )


def dim_interp(carpet: Carpet, u: float) -> float:
    """Entropy-form dimension of the mixed vectors; hausdorff at u=0, box at u=1."""
    mv = mixed_vectors(carpet, u)
    return (entropy(mv.P) / carpet.logn
            + (1.0 - carpet.r) * entropy(mv.QM) / carpet.logm)


def _psi_raw(carpet: Carpet, theta: float, u: float) -> PsiEval:
    mv = mixed_vectors(carpet, u)
    hp, hqm, hq = entropy(mv.P), entropy(mv.QM), entropy(mv.Q)
    dim_t = hp / carpet.logn + (1.0 - carpet.r) * hqm / carpet.logm
    val = dim_t - (1.0 - theta) * (hp - hq) / carpet.logn
    return PsiEval(theta=theta, u=u, dim_t=dim_t, psi=val)


def psi(carpet: Carpet, theta: float, u: float) -> PsiEval:
    """psi at (theta, u); u plays the role of theta^t, which degenerates to
    0 at theta=0 and to 1 at theta=1 regardless of t."""
    theta = _check_unit("theta", theta, ThetaOutOfRange)
    u = _check_unit("u", u, UOutOfRange)
    if theta == 0.0:
        u = 0.0
    elif theta == 1.0:
        u = 1.0
    return _psi_raw(carpet, theta, u)


def _golden_max(f, a: float, b: float, tol: float = _REFINE_TOL) -> float:
    """Golden-section maximizer; ties resolve toward the left endpoint."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def lower_thm(carpet: Carpet, theta: float) -> PsiEval:
    """sup over u in [0,1] of psi(theta, u); grid scan plus golden refinement."""
    theta = _check_unit("theta", theta, ThetaOutOfRange)
    if theta == 0.0:
        return _psi_raw(carpet, 0.0, 0.0)
    if theta == 1.0:
        return _psi_raw(carpet, 1.0, 1.0)
    us = [i / (_GRID - 1) for i in range(_GRID)]
    vals = [_psi_raw(carpet, theta, u).psi for u in us]
    best = max(range(_GRID), key=lambda i: (vals[i], -i))
    a = us[best - 1] if best > 0 else 0.0
    b = us[best + 1] if best + 1 < _GRID else 1.0
    u_star = _golden_max(lambda u: _psi_raw(carpet, theta, u).psi, a, b)
    cand = _psi_raw(carpet, theta, u_star)
    grid_best = _psi_raw(carpet, theta, us[best])
    return cand if cand.psi >= grid_best.psi else grid_best


def lower_linear_box(carpet: Carpet, theta: float) -> float:
    """Line through the box dimension with slope (c - mean log fibre)/log n."""
    theta = _check_unit("theta", theta, ThetaOutOfRange)
    return box_dim(carpet) - (1.0 - theta) * (carpet.c - carpet.mean_log_n) / carpet.logn


def lower_ffk(carpet: Carpet, theta: float) -> float:
    """Line through the Hausdorff dimension, slope (log N - H(p_hat))/log n."""
    theta = _check_unit("theta", theta, ThetaOutOfRange)
    p_hat, _ = mcmullen_vectors(carpet)
    slope = (math.log(carpet.N) - entropy(p_hat)) / carpet.logn
    return hausdorff_dim(carpet) + theta * slope


def lower_envelope(carpet: Carpet, theta: float) -> float:
    """Pointwise maximum of the three lower bounds."""
    return max(lower_thm(carpet, theta).psi,
               lower_linear_box(carpet, theta),
               lower_ffk(carpet, theta))
