"""Carpet description, validation, and probability-vector primitives.

A carpet is given by a grid of m columns and n rows (n > m >= 2) and a set
of selected cells ("digits").  Maps are indexed 1..N in (column, row) order;
columns that contain at least one map are ranked 1..M by ascending column
index.  All derived constants are in natural logarithms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidSpec

NORM_TOL = 1e-12


@dataclass(frozen=True)
class CarpetSpec:
    m: int
    n: int
    digits: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, obj: dict) -> "CarpetSpec":
        if not isinstance(obj, dict):
            raise InvalidSpec("carpet spec must be a JSON object")
        extra = set(obj) - {"m", "n", "digits"}
        if extra:
            raise InvalidSpec(f"unknown fields in carpet spec: {sorted(extra)}")
        missing = {"m", "n", "digits"} - set(obj)
        if missing:
            raise InvalidSpec(f"missing fields in carpet spec: {sorted(missing)}")
        m, n, digits = obj["m"], obj["n"], obj["digits"]
        if not isinstance(m, int) or not isinstance(n, int):
            raise InvalidSpec("m and n must be integers")
        if not isinstance(digits, list):
            raise InvalidSpec("digits must be a list of [col, row] pairs")
        pairs = []
        for d in digits:
            if (not isinstance(d, (list, tuple)) or len(d) != 2
                    or not all(isinstance(v, int) for v in d)):
                raise InvalidSpec(f"bad digit entry: {d!r}")
            pairs.append((d[0], d[1]))
        return cls(m=m, n=n, digits=tuple(pairs))

    @classmethod
    def from_json(cls, text: str) -> "CarpetSpec":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"not valid JSON: {exc}") from exc
        return cls.from_dict(obj)


def load_spec(path) -> CarpetSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return CarpetSpec.from_json(fh.read())


@dataclass(frozen=True)
class Carpet:
    """Validated carpet with derived constants.

    phi[i-1] is the 1-based column rank of map i; col_counts[j-1] is the
    number of maps in the j-th non-empty column.
    """
    spec: CarpetSpec
    N: int
    M: int
    col_counts: tuple[int, ...]
    phi: tuple[int, ...]
    logm: float
    logn: float
    r: float            # log m / log n
    c: float            # log(N / M)
    mean_log_n: float   # (1/M) sum_j log N_j

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def n(self) -> int:
        return self.spec.n

    def column_of(self, i: int) -> int:
        """1-based column rank of 1-based map index i."""
        return self.phi[i - 1]


def parse_carpet(spec: CarpetSpec) -> Carpet:
    if spec.m < 2:
        raise InvalidSpec(f"need m >= 2, got m={spec.m}")
    if spec.n <= spec.m:
        raise InvalidSpec(f"need n > m, got n={spec.n}, m={spec.m}")
    if not spec.digits:
        raise InvalidSpec("digit list is empty")
    seen = set()
    for col, row in spec.digits:
        if not (0 <= col < spec.m and 0 <= row < spec.n):
            raise InvalidSpec(f"digit ({col},{row}) outside [0,{spec.m})x[0,{spec.n})")
        if (col, row) in seen:
            raise InvalidSpec(f"duplicate digit ({col},{row})")
        seen.add((col, row))

    ordered = sorted(spec.digits)
    nonempty_cols = sorted({col for col, _ in ordered})
    rank = {col: j + 1 for j, col in enumerate(nonempty_cols)}
    M = len(nonempty_cols)
    counts = [0] * M
    phi = []
    for col, _ in ordered:
        phi.append(rank[col])
        counts[rank[col] - 1] += 1
    N = len(ordered)
    logm, logn = math.log(spec.m), math.log(spec.n)
    return Carpet(
        spec=CarpetSpec(spec.m, spec.n, tuple(ordered)),
        N=N,
        M=M,
        col_counts=tuple(counts),
        phi=tuple(phi),
        logm=logm,
        logn=logn,
        r=logm / logn,
        c=math.log(N / M),
        mean_log_n=sum(math.log(k) for k in counts) / M,
    )


def carpet_from_dict(obj: dict) -> Carpet:
    return parse_carpet(CarpetSpec.from_dict(obj))


def load_carpet(path) -> Carpet:
    return parse_carpet(load_spec(path))


class ProbVector:
    """Probability vector; renormalizes when the sum is within 1e-12 of 1."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[float]):
        vals = tuple(float(v) for v in entries)
        if not vals:
            raise ValueError("empty probability vector")
        if any(v < 0.0 for v in vals):
            raise ValueError("negative entry in probability vector")
        total = sum(vals)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"entries sum to {total!r}, not 1")
        if total != 1.0:
            vals = tuple(v / total for v in vals)
        self.entries = vals

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self) -> str:
        return f"ProbVector({list(self.entries)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ProbVector) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)


def _entries(p) -> Sequence[float]:
    return p.entries if isinstance(p, ProbVector) else tuple(p)


def entropy(p) -> float:
    """H(p) = -sum p_i log p_i, with 0 log 0 := 0."""
    return -sum(v * math.log(v) for v in _entries(p) if v > 0.0)


def log_geometric_mean(c, p) -> float:
    """log of the geometric mean of c weighted by p: sum p_i log c_i.

    Entries with p_i = 0 contribute nothing, so c may vanish there.
    """
    cv, pv = _entries(c), _entries(p)
    if len(cv) != len(pv):
        raise DimensionMismatch(f"lengths differ: {len(cv)} vs {len(pv)}")
    return sum(w * math.log(v) for v, w in zip(cv, pv) if w > 0.0)


def mcmullen_vectors(carpet: Carpet) -> tuple[ProbVector, ProbVector]:
    """The dimension-optimal map vector and its column marginal.

    The map vector is constant within columns with weight N_j^(r-1) / Z,
    Z = sum_j N_j^r; the column marginal multiplies by N_j.
    """
    r = carpet.r
    z = sum(nj ** r for nj in carpet.col_counts)
    p_hat = [carpet.col_counts[j - 1] ** (r - 1.0) / z for j in carpet.phi]
    q_hat = [nj ** r / z for nj in carpet.col_counts]
    return ProbVector(p_hat), ProbVector(q_hat)


def uniform_vectors(carpet: Carpet) -> tuple[ProbVector, ProbVector, ProbVector]:
    """(uniform on maps, uniform on columns, column-uniform spread over maps)."""
    p_tilde = ProbVector([1.0 / carpet.N] * carpet.N)
    q_tilde_m = ProbVector([1.0 / carpet.M] * carpet.M)
    q_over_n = ProbVector(
        [1.0 / (carpet.M * carpet.col_counts[j - 1]) for j in carpet.phi])
    return p_tilde, q_tilde_m, q_over_n


def column_log_counts(carpet: Carpet) -> tuple[float, ...]:
    """Per-map vector (log N_phi(1), ..., log N_phi(N))."""
    return tuple(math.log(carpet.col_counts[j - 1]) for j in carpet.phi)


def fibre_counts_per_map(carpet: Carpet) -> tuple[int, ...]:
    """Per-map vector (N_phi(1), ..., N_phi(N))."""
    return tuple(carpet.col_counts[j - 1] for j in carpet.phi)


def has_uniform_fibres(carpet: Carpet) -> bool:
    return len(set(carpet.col_counts)) == 1
