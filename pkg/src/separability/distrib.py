"""Empirical-distribution machinery: ECDF, two-sample KS, 1-D Wasserstein.

All three comparisons work directly on finite samples; no asymptotics,
no p-values. Ties across the two samples are handled by evaluating both
ECDFs at the shared jump point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .metrics import DistanceSample


def _values(sample) -> np.ndarray:
    if isinstance(sample, DistanceSample):
        v = sample.values
    else:
        v = np.sort(np.asarray(sample, dtype=np.float64).ravel())
    if v.size == 0:
        raise ValidationError("empty sample")
    return v


@dataclass(frozen=True)
class Ecdf:
    """Right-continuous step function F(x) = #(samples <= x) / n."""

    support: np.ndarray
    cumulative: np.ndarray

    @classmethod
    def from_sample(cls, sample) -> "Ecdf":
        v = _values(sample)
        support, counts = np.unique(v, return_counts=True)
        cumulative = np.cumsum(counts) / v.size
        cumulative[-1] = 1.0
        return cls(support, cumulative)

    def __call__(self, x) -> np.ndarray | float:
        idx = np.searchsorted(self.support, x, side="right")
        out = np.where(idx > 0, self.cumulative[np.maximum(idx - 1, 0)], 0.0)
        return float(out) if np.isscalar(x) else out


def ks_distance(p, q) -> float:
    """sup_x |F_p(x) - F_q(x)| over the merged jump points; in [0, 1]."""
    pv, qv = _values(p), _values(q)
    grid = np.union1d(pv, qv)
    fp = np.searchsorted(pv, grid, side="right") / pv.size
    fq = np.searchsorted(qv, grid, side="right") / qv.size
    return float(np.abs(fp - fq).max())


def wasserstein_distance(p, q) -> float:
    """Area between the two ECDFs via one merge sweep."""
    pv, qv = _values(p), _values(q)
    grid = np.union1d(pv, qv)
    if grid.size == 1:
        return 0.0
    fp = np.searchsorted(pv, grid[:-1], side="right") / pv.size
    fq = np.searchsorted(qv, grid[:-1], side="right") / qv.size
    return float(np.sum(np.abs(fp - fq) * np.diff(grid)))


def normalized_wasserstein(p, q) -> float:
    """Wasserstein distance divided by the union-support range; in [0, 1].

    Defined as 0 when all values in both samples coincide.
    """
    pv, qv = _values(p), _values(q)
    lo = min(pv[0], qv[0])
    hi = max(pv[-1], qv[-1])
    if hi == lo:
        return 0.0
    return wasserstein_distance(pv, qv) / (hi - lo)
