"""Closed-form Hausdorff and box dimensions.

Two equivalent forms are implemented for each dimension: an entropy form
(the public value) and the standard closed form used as an internal
cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .carpet import Carpet, entropy, mcmullen_vectors, uniform_vectors


@dataclass(frozen=True)
class DimPair:
    hausdorff: float
    box: float

    @property
    def gap(self) -> float:
        return self.box - self.hausdorff


def hausdorff_dim(carpet: Carpet) -> float:
    p_hat, q_hat_m = mcmullen_vectors(carpet)
    return (entropy(p_hat) / carpet.logn
            + (1.0 - carpet.r) * entropy(q_hat_m) / carpet.logm)


def hausdorff_dim_closed(carpet: Carpet) -> float:
    """log_m of sum_j N_j^(log_n m); independent of the entropy form."""
    return math.log(sum(nj ** carpet.r for nj in carpet.col_counts)) / carpet.logm


def box_dim(carpet: Carpet) -> float:
    p_tilde, q_tilde_m, _ = uniform_vectors(carpet)
    return (entropy(p_tilde) / carpet.logn
            + (1.0 - carpet.r) * entropy(q_tilde_m) / carpet.logm)


def box_dim_closed(carpet: Carpet) -> float:
    """log_m M + log_n (N/M); independent of the entropy form."""
    return math.log(carpet.M) / carpet.logm + carpet.c / carpet.logn


def dim_pair(carpet: Carpet) -> DimPair:
    return DimPair(hausdorff=hausdorff_dim(carpet), box=box_dim(carpet))
