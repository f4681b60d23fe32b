"""Exact finite-depth symbolic computations.

Counts and covering costs over approximate-square identifiers, exact tail
probabilities for the column-count mean, and product measures on cylinder
sets.  Counts that can overflow 64 bits are carried in natural-log domain
via log-gamma multinomials; an exact big-integer path is kept for small
window lengths as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lgamma
from typing import Iterator, Sequence

from .carpet import Carpet, ProbVector, entropy, column_log_counts
from .dimensions import box_dim
from .errors import (DomainError, InvalidMeasure, RegimeError, RegimeMismatch,
                     WordTooShort)
from .rate import RateFunction

_EXACT_WINDOW = 30
_LOG10 = math.log(10.0)
_NEG_INF = float("-inf")


@dataclass(frozen=True)
class SquareId:
    """Identifier of a level-K approximate square: L(K) map indices followed
    by K - L(K) column ranks, all 1-based."""
    level: int
    prefix: tuple[int, ...]
    columns: tuple[int, ...]


@dataclass(frozen=True)
class OracleReport:
    K: int
    theta: float
    delta0: float
    s: float | None
    window: int
    log10_good: float
    log10_bad: float
    log10_total: float
    good_exact: int | None
    bad_exact: int | None
    bad_exponent: float
    asymptotic_bad_exponent: float
    log10_cost_bad: float | None = None
    log10_cost_good: float | None = None
    log10_cost_total: float | None = None


def level_L(carpet: Carpet, K: int) -> int:
    """Largest l with n^l <= m^K, by exact integer comparison."""
    if K < 1:
        raise DomainError(f"need K >= 1, got {K}")
    m, n = carpet.m, carpet.n
    est = max(int(K * carpet.r), 0)
    mk = m ** K
    while n ** (est + 1) <= mk:
        est += 1
    while est > 0 and n ** est > mk:
        est -= 1
    return est


def floor_quotient(K: int, theta) -> int:
    """floor(K / theta); exact for Fraction theta, nudged floats otherwise.

    A float quotient within 1e-12 (relative) of an integer is snapped to it
    before flooring.
    """
    if isinstance(theta, Fraction):
        return math.floor(Fraction(K) / theta)
    q = K / float(theta)
    nearest = round(q)
    if abs(q - nearest) <= 1e-12 * max(1.0, abs(q)):
        q = float(nearest)
    return math.floor(q)


def _check_square(carpet: Carpet, sq: SquareId) -> None:
    lk = level_L(carpet, sq.level)
    if len(sq.prefix) != lk or len(sq.columns) != sq.level - lk:
        raise RegimeMismatch(
            f"square at level {sq.level} needs {lk} map symbols and "
            f"{sq.level - lk} column symbols, got "
            f"{len(sq.prefix)} and {len(sq.columns)}")
    if any(not 1 <= i <= carpet.N for i in sq.prefix):
        raise RegimeMismatch("map index out of range in prefix")
    if any(not 1 <= j <= carpet.M for j in sq.columns):
        raise RegimeMismatch("column rank out of range")


def fibre_count(carpet: Carpet, sq: SquareId) -> int:
    """Number of cylinder sets of the square's level inside it."""
    _check_square(carpet, sq)
    out = 1
    for j in sq.columns:
        out *= carpet.col_counts[j - 1]
    return out


def squares_within(carpet: Carpet, k1: int, k2: int,
                   window: Sequence[int]) -> int:
    """Exact number of level-k2 approximate squares inside a level-k1 one.

    When L(k2) <= k1 the window holds the column ranks at positions
    L(k1)+1 .. L(k2); otherwise k1 is the base level and the window holds
    the ranks at positions L(k1)+1 .. k1.
    """
    if not k1 < k2:
        raise RegimeMismatch(f"need k1 < k2, got {k1}, {k2}")
    l1, l2 = level_L(carpet, k1), level_L(carpet, k2)
    window = tuple(window)
    if any(not 1 <= j <= carpet.M for j in window):
        raise RegimeMismatch("column rank out of range in window")
    if l2 <= k1:
        if len(window) != l2 - l1:
            raise RegimeMismatch(
                f"window must cover positions {l1 + 1}..{l2} "
                f"({l2 - l1} entries), got {len(window)}")
        out = carpet.M ** (k2 - k1)
        for j in window:
            out *= carpet.col_counts[j - 1]
        return out
    if len(window) != k1 - l1:
        raise RegimeMismatch(
            f"window must cover positions {l1 + 1}..{k1} "
            f"({k1 - l1} entries), got {len(window)}")
    out = carpet.N ** (l2 - k1) * carpet.M ** (k2 - l2)
    for j in window:
        out *= carpet.col_counts[j - 1]
    return out


def _distinct_columns(carpet: Carpet) -> tuple[tuple[float, ...], tuple[int, ...]]:
    """Distinct log column counts with multiplicities, ascending."""
    groups: dict[int, int] = {}
    for nj in carpet.col_counts:
        groups[nj] = groups.get(nj, 0) + 1
    items = sorted(groups.items())
    return (tuple(math.log(nj) for nj, _ in items),
            tuple(mult for _, mult in items))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _logsumexp(vals: list[float]) -> float:
    vals = [v for v in vals if v != _NEG_INF]
    if not vals:
        return _NEG_INF
    hi = max(vals)
    return hi + math.log(sum(math.exp(v - hi) for v in vals))


def _window_sums(carpet: Carpet, W: int, threshold: float,
                 with_products: bool = False):
    """Classify the W-long column windows by their mean log fibre count.

    Returns natural-log counts (log_good, log_bad), exact integer counts
    when W is small, and optionally the log of the sum of fibre-count
    products over the good windows.  Windows whose mean exceeds the
    threshold are bad; ties go to good.
    """
    logs, mults = _distinct_columns(carpet)
    D = len(logs)
    exact = W <= _EXACT_WINDOW
    lg_good: list[float] = []
    lg_bad: list[float] = []
    lg_goodprod: list[float] = []
    good_int = 0
    bad_int = 0
    if W == 0:
        # single empty window, vacuously good; empty product is 1
        return 0.0, _NEG_INF, 1, 0, 0.0
    for comp in _compositions(W, D):
        log_cnt = lgamma(W + 1) - sum(lgamma(w + 1) for w in comp)
        log_cnt += sum(w * math.log(mu) for w, mu in zip(comp, mults) if w)
        mean = sum(w * v for w, v in zip(comp, logs)) / W
        bad = mean > threshold
        if bad:
            lg_bad.append(log_cnt)
        else:
            lg_good.append(log_cnt)
            if with_products:
                lg_goodprod.append(log_cnt + sum(w * v for w, v in zip(comp, logs)))
        if exact:
            cnt = math.factorial(W)
            for w, mu in zip(comp, mults):
                cnt //= math.factorial(w)
                cnt *= mu ** w
            if bad:
                bad_int += cnt
            else:
                good_int += cnt
    return (_logsumexp(lg_good), _logsumexp(lg_bad),
            good_int if exact else None, bad_int if exact else None,
            _logsumexp(lg_goodprod) if with_products else None)


def _counting_report(carpet: Carpet, K: int, theta, delta0: float,
                     s: float | None, with_cost: bool) -> OracleReport:
    theta_f = float(theta)
    if theta_f < carpet.r - 1e-12 or theta_f >= 1.0:
        raise RegimeError(
            f"theta={theta_f!r} outside [log_n m, 1) = [{carpet.r!r}, 1); "
            "the two-scale subdivision counting changes regime below log_n m")
    kth = floor_quotient(K, theta)
    lK = level_L(carpet, K)
    lkth = level_L(carpet, kth)
    if lkth > K:
        raise RegimeError(
            f"L(floor(K/theta)) = {lkth} exceeds K = {K}; "
            "the single-window counting formula does not apply")
    W = lkth - lK
    threshold = carpet.c - delta0
    lg_good_w, lg_bad_w, good_int_w, bad_int_w, lg_prod = _window_sums(
        carpet, W, threshold, with_products=with_cost)

    log_n = math.log(carpet.N)
    log_m_cols = math.log(carpet.M)
    # common factor N^L(K) * M^(K - L(K/theta)) multiplying both window counts
    lg_base = lK * log_n + (K - lkth) * log_m_cols
    lg_good = lg_base + lg_good_w if lg_good_w != _NEG_INF else _NEG_INF
    lg_bad = lg_base + lg_bad_w if lg_bad_w != _NEG_INF else _NEG_INF
    lg_total = lK * log_n + (K - lK) * log_m_cols
    base_int = carpet.N ** lK * carpet.M ** (K - lkth)
    good_exact = base_int * good_int_w if good_int_w is not None else None
    bad_exact = base_int * bad_int_w if bad_int_w is not None else None

    bad_exponent = lg_bad / (K * carpet.logm) if lg_bad != _NEG_INF else _NEG_INF
    # rate vanishes at and left of the mean; clamp so degenerate thresholds work
    if threshold <= carpet.mean_log_n:
        rate_val = 0.0
    else:
        rate_val = RateFunction(carpet)(threshold)
    asym = box_dim(carpet) - rate_val * (1.0 / theta_f - 1.0) / carpet.logn

    cost_bad = cost_good = cost_total = None
    if with_cost:
        if s is None:
            raise DomainError("cover cost needs an exponent s")
        cost_bad_ln = (lg_bad - K * s * carpet.logm
                       if lg_bad != _NEG_INF else _NEG_INF)
        if lg_prod != _NEG_INF:
            cost_good_ln = (lg_base + (kth - K) * log_m_cols
                            - s * kth * carpet.logm + lg_prod)
        else:
            cost_good_ln = _NEG_INF
        cost_total_ln = _logsumexp([cost_bad_ln, cost_good_ln])
        cost_bad = cost_bad_ln / _LOG10 if cost_bad_ln != _NEG_INF else _NEG_INF
        cost_good = cost_good_ln / _LOG10 if cost_good_ln != _NEG_INF else _NEG_INF
        cost_total = cost_total_ln / _LOG10 if cost_total_ln != _NEG_INF else _NEG_INF

    return OracleReport(
        K=K, theta=theta_f, delta0=delta0, s=s, window=W,
        log10_good=lg_good / _LOG10 if lg_good != _NEG_INF else _NEG_INF,
        log10_bad=lg_bad / _LOG10 if lg_bad != _NEG_INF else _NEG_INF,
        log10_total=lg_total / _LOG10,
        good_exact=good_exact, bad_exact=bad_exact,
        bad_exponent=bad_exponent, asymptotic_bad_exponent=asym,
        log10_cost_bad=cost_bad, log10_cost_good=cost_good,
        log10_cost_total=cost_total)


def good_bad_counts(carpet: Carpet, K: int, theta, delta0: float) -> OracleReport:
    """Partition of the level-K approximate squares by window mean."""
    return _counting_report(carpet, K, theta, delta0, s=None, with_cost=False)


def cover_cost_log(carpet: Carpet, K: int, theta, delta0: float,
                   s: float) -> OracleReport:
    """Two-scale cover cost at exponent s, in log10, plus the counts."""
    return _counting_report(carpet, K, theta, delta0, s=s, with_cost=True)


def empirical_rate(carpet: Carpet, ell: int, x: float) -> float:
    """-log P(mean of ell uniform column picks > x) / ell, exactly.

    At x equal to the maximal log count the strict tail is empty, so the
    closure P(mean >= x) is used there; this matches the rate function's
    right-endpoint closed form.
    """
    if ell < 1:
        raise DomainError(f"need ell >= 1, got {ell}")
    logs, mults = _distinct_columns(carpet)
    log_max = logs[-1]
    if not carpet.mean_log_n < x <= log_max + 1e-12:
        raise DomainError(
            f"x={x!r} outside ({carpet.mean_log_n!r}, {log_max!r}]")
    at_endpoint = x >= log_max - 1e-12
    count = 0
    for comp in _compositions(ell, len(logs)):
        mean = sum(w * v for w, v in zip(comp, logs)) / ell
        hit = mean >= x - 1e-12 if at_endpoint else mean > x
        if not hit:
            continue
        cnt = math.factorial(ell)
        for w, mu in zip(comp, mults):
            cnt //= math.factorial(w)
            cnt *= mu ** w
        count += cnt
    if count == 0:
        return math.inf
    log_p = math.log(count) - ell * math.log(carpet.M)
    return -log_p / ell


class MeasureSpec:
    """Product measure data: vector p on the first L(K) symbols, q afterwards.

    Entries may be floats or Fractions; Fractions keep every cylinder weight
    exact.  Column-constancy is checked on demand by the square operations.
    """

    def __init__(self, carpet: Carpet, K: int, p, q):
        if K < 1:
            raise DomainError(f"need K >= 1, got {K}")
        self.carpet = carpet
        self.K = K
        self.p = tuple(p.entries if isinstance(p, ProbVector) else p)
        self.q = tuple(q.entries if isinstance(q, ProbVector) else q)
        if len(self.p) != carpet.N or len(self.q) != carpet.N:
            raise InvalidMeasure(
                f"vectors must have length N={carpet.N}")
        self.LK = level_L(carpet, K)

    def _column_constant(self, vec) -> bool:
        by_col: dict[int, object] = {}
        for i, v in enumerate(vec):
            j = self.carpet.phi[i]
            if j in by_col and by_col[j] != v:
                return False
            by_col[j] = v
        return True

    @property
    def column_constant(self) -> bool:
        return self._column_constant(self.p) and self._column_constant(self.q)


def nu_cylinder(spec: MeasureSpec, word: Sequence[int]):
    """Measure of the cylinder of a word of 1-based map indices."""
    if len(word) < spec.K:
        raise WordTooShort(f"word length {len(word)} < K={spec.K}")
    out = 1
    for pos, i in enumerate(word):
        if not 1 <= i <= spec.carpet.N:
            raise DomainError(f"map index {i} out of range")
        out = out * (spec.p[i - 1] if pos < spec.LK else spec.q[i - 1])
    return out


def log_nu_cylinder(spec: MeasureSpec, word: Sequence[int]) -> float:
    """Natural log of the cylinder measure; -inf on a zero factor."""
    if len(word) < spec.K:
        raise WordTooShort(f"word length {len(word)} < K={spec.K}")
    out = 0.0
    for pos, i in enumerate(word):
        v = float(spec.p[i - 1] if pos < spec.LK else spec.q[i - 1])
        if v == 0.0:
            return _NEG_INF
        out += math.log(v)
    return out


def _representative_word(carpet: Carpet, sq: SquareId) -> tuple[int, ...]:
    first_in_col = {}
    for i, j in enumerate(carpet.phi, start=1):
        first_in_col.setdefault(j, i)
    return sq.prefix + tuple(first_in_col[j] for j in sq.columns)


def nu_square(spec: MeasureSpec, sq: SquareId):
    """Measure of an approximate square: fibre count times any representative
    cylinder; well-defined because p and q are column-constant."""
    if sq.level < spec.K:
        raise WordTooShort(
            f"square level {sq.level} < K={spec.K}")
    if not spec.column_constant:
        raise InvalidMeasure("p and q must be constant within columns")
    word = _representative_word(spec.carpet, sq)
    return fibre_count(spec.carpet, sq) * nu_cylinder(spec, word)


def expected_log_nu(spec: MeasureSpec, k: int) -> float:
    """Exact expectation of -log of the level-k square measure.

    Coordinates are independent (p up to L(K), q afterwards), so the value
    is L(K) H(p) + (k - L(K)) H(q) - (k - L(k)) E_q[log fibre count].
    """
    if k < spec.K:
        raise WordTooShort(f"k={k} < K={spec.K}")
    carpet = spec.carpet
    lk = level_L(carpet, k)
    q_float = [float(v) for v in spec.q]
    mean_log_fibre = sum(
        v * w for v, w in zip(column_log_counts(carpet), q_float))
    return (spec.LK * entropy(spec.p)
            + (k - spec.LK) * entropy(spec.q)
            - (k - lk) * mean_log_fibre)


def all_squares(carpet: Carpet, k: int) -> Iterator[SquareId]:
    """Enumerate every level-k approximate square identifier (small k only)."""
    from itertools import product

    lk = level_L(carpet, k)
    for prefix in product(range(1, carpet.N + 1), repeat=lk):
        for cols in product(range(1, carpet.M + 1), repeat=k - lk):
            yield SquareId(level=k, prefix=prefix, columns=cols)
