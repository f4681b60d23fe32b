"""Cramer rate function of the uniform pick from {log N_1, ..., log N_M}.

I(x) = sup_{lambda >= 0} (lambda x - log((1/M) sum_j N_j^lambda)), evaluated
by bracketing the zero of the strictly increasing derivative of the cumulant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .carpet import Carpet
from .errors import DomainError

_EDGE_TOL = 1e-12
_REL_TOL = 1e-13
_MAX_ITER = 200
_MAX_LAMBDA = 1e9


@dataclass(frozen=True)
class RateEval:
    x: float
    value: float
    lambda_star: float  # math.inf when the supremum is not attained


class RateFunction:
    """Memoizing evaluator bound to one (immutable) carpet."""

    def __init__(self, carpet: Carpet):
        self.carpet = carpet
        self._logs = np.log(np.asarray(carpet.col_counts, dtype=float))
        self._log_max = float(self._logs.max())
        self._n_max = int(sum(1 for v in carpet.col_counts
                              if v == max(carpet.col_counts)))
        self._cache: dict[float, RateEval] = {}

    def cumulant(self, lam: float) -> float:
        """log((1/M) sum_j N_j^lambda); convex, zero at lambda = 0."""
        a = lam * self._logs
        hi = a.max()
        return float(hi + math.log(np.exp(a - hi).sum())) - math.log(self.carpet.M)

    def cumulant_deriv(self, lam: float) -> float:
        """Strictly increasing from mean_log_n (lam=0) toward log N_max."""
        a = lam * self._logs
        w = np.exp(a - a.max())
        return float((w * self._logs).sum() / w.sum())

    def __call__(self, x: float) -> float:
        return self.evaluate(x).value

    def evaluate(self, x: float) -> RateEval:
        key = float(x)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._evaluate(key)
            self._cache[key] = hit
        return hit

    def _evaluate(self, x: float) -> RateEval:
        mean = self.carpet.mean_log_n
        if x < mean - _EDGE_TOL or x > self._log_max + _EDGE_TOL:
            raise DomainError(
                f"x={x!r} outside [{mean!r}, {self._log_max!r}]")
        x = min(max(x, mean), self._log_max)
        if x == mean:
            return RateEval(x=x, value=0.0, lambda_star=0.0)
        if x == self._log_max:
            # supremum not attained; closed form log M - log(#maximal columns)
            return RateEval(x=x,
                            value=math.log(self.carpet.M) - math.log(self._n_max),
                            lambda_star=math.inf)
        lo, hi = 0.0, 1.0
        while self.cumulant_deriv(hi) < x:
            hi *= 2.0
            if hi > _MAX_LAMBDA:
                # x indistinguishable from the right endpoint at this precision
                return RateEval(
                    x=x,
                    value=math.log(self.carpet.M) - math.log(self._n_max),
                    lambda_star=math.inf)
        for _ in range(_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if self.cumulant_deriv(mid) < x:
                lo = mid
            else:
                hi = mid
            if hi - lo <= _REL_TOL * max(1.0, hi):
                break
        lam = 0.5 * (lo + hi)
        return RateEval(x=x, value=lam * x - self.cumulant(lam), lambda_star=lam)


def cumulant(carpet: Carpet, lam: float) -> float:
    return RateFunction(carpet).cumulant(lam)


def rate(carpet: Carpet, x: float) -> RateEval:
    return RateFunction(carpet).evaluate(x)
