"""Point-to-point metrics and the intra-/between-class distance multisets.

Pairwise work is chunked into fixed-size row blocks so memory stays
bounded and blocks can run on a thread pool; blocks are concatenated in
a fixed order and sorted, so results are independent of thread count.
"""

from __future__ import annotations

import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .dataset import LabeledDataset
from .errors import IngestionError, NumericError, ValidationError

METRIC_KINDS = ("euclidean", "cityblock", "chebyshev", "cosine", "correlation", "mahalanobis")

BLOCK_ROWS = 1024

_SPILL_MAGIC = b"DSMP"

# condition-number guard for the pooled covariance inverse
_MAX_CONDITION = 1e12


def thread_count() -> int:
    """Worker count for pairwise blocks; DSI_THREADS overrides cpu_count."""
    env = os.environ.get("DSI_THREADS", "").strip()
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise ValidationError(f"DSI_THREADS must be an integer, got {env!r}") from exc
        if value < 1:
            raise ValidationError("DSI_THREADS must be >= 1")
        return value
    return os.cpu_count() or 1


@dataclass(frozen=True)
class MetricSpec:
    """Which point-to-point distance to use, plus any metric state.

    ``inverse_covariance`` must be present (and SPD) iff kind is
    mahalanobis; use :func:`mahalanobis_from_data` to estimate it from a
    pooled dataset.
    """

    kind: str = "euclidean"
    inverse_covariance: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.kind not in METRIC_KINDS:
            raise ValidationError(f"unknown metric {self.kind!r}; choose from {METRIC_KINDS}")
        if self.kind == "mahalanobis":
            vi = self.inverse_covariance
            if vi is None:
                # deferred: estimated from the pooled dataset at use time
                return
            vi = np.asarray(vi, dtype=np.float64)
            if vi.ndim != 2 or vi.shape[0] != vi.shape[1]:
                raise ValidationError("inverse covariance must be a square matrix")
            if not np.allclose(vi, vi.T, rtol=1e-10, atol=1e-12):
                raise NumericError("inverse covariance is not symmetric")
            try:
                np.linalg.cholesky(vi)
            except np.linalg.LinAlgError as exc:
                raise NumericError("inverse covariance is not positive definite") from exc
            vi.setflags(write=False)
            object.__setattr__(self, "inverse_covariance", vi)
        elif self.inverse_covariance is not None:
            raise ValidationError("inverse_covariance only applies to the mahalanobis metric")


def mahalanobis_from_data(data: LabeledDataset) -> MetricSpec:
    """Pooled-covariance Mahalanobis spec (all classes together).

    Near-singular covariance is an error, not a silent pseudo-inverse.
    """
    if data.n < data.d + 1:
        raise NumericError(
            f"need more than d={data.d} rows to estimate a full-rank covariance, have {data.n}"
        )
    cov = np.cov(data.points, rowvar=False)
    cov = np.atleast_2d(cov)
    cond = np.linalg.cond(cov)
    if not np.isfinite(cond) or cond > _MAX_CONDITION:
        raise NumericError(f"pooled covariance is near-singular (condition number {cond:.3g})")
    return MetricSpec("mahalanobis", np.linalg.inv(cov))


@dataclass(frozen=True)
class DistanceSample:
    """A sorted multiset of pairwise distances (an ICD or BCD set)."""

    values: np.ndarray
    source: str

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if np.any(np.diff(v) < 0.0):
            v = np.sort(v)
        if v.size and (not np.isfinite(v).all() or v[0] < 0.0):
            raise ValidationError("distances must be finite and non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def count(self) -> int:
        return self.values.size

    def save(self, path: str | os.PathLike) -> None:
        """Spill to disk as little-endian float64 with a small header."""
        tag = self.source.encode("utf-8")
        with open(path, "wb") as fh:
            fh.write(_SPILL_MAGIC)
            fh.write(struct.pack("<QH", self.count, len(tag)))
            fh.write(tag)
            fh.write(self.values.astype("<f8").tobytes())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "DistanceSample":
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != _SPILL_MAGIC:
                raise IngestionError(f"{path}: not a distance-sample file")
            count, taglen = struct.unpack("<QH", fh.read(10))
            source = fh.read(taglen).decode("utf-8")
            values = np.frombuffer(fh.read(count * 8), dtype="<f8")
            if values.size != count:
                raise IngestionError(f"{path}: truncated distance-sample file")
        return cls(values.astype(np.float64), source)


def _check_rows(points: np.ndarray, metric: MetricSpec) -> None:
    if metric.kind == "cosine":
        norms = np.linalg.norm(points, axis=1)
        if np.any(norms == 0.0):
            raise NumericError("cosine distance undefined for a zero-norm vector")
    elif metric.kind == "correlation":
        if np.any(points.std(axis=1) == 0.0):
            raise NumericError("correlation distance undefined for a zero-variance vector")
    elif metric.kind == "mahalanobis":
        vi = metric.inverse_covariance
        if vi is None:
            raise ValidationError("mahalanobis metric is missing its inverse covariance")
        if vi.shape[0] != points.shape[1]:
            raise ValidationError(
                f"inverse covariance is {vi.shape[0]}x{vi.shape[0]} but points have d={points.shape[1]}"
            )


def _cdist_kwargs(metric: MetricSpec) -> dict:
    if metric.kind == "mahalanobis":
        return {"metric": "mahalanobis", "VI": metric.inverse_covariance}
    return {"metric": metric.kind}


def point_distance(a: np.ndarray, b: np.ndarray, metric: MetricSpec) -> float:
    """Distance between two d-vectors under the given metric."""
    a = np.asarray(a, dtype=np.float64).reshape(1, -1)
    b = np.asarray(b, dtype=np.float64).reshape(1, -1)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    _check_rows(np.vstack([a, b]), metric)
    value = float(cdist(a, b, **_cdist_kwargs(metric))[0, 0])
    # cosine/correlation of a vector with itself can come out at -1e-16
    return max(value, 0.0)


def _blocks(n: int) -> list[tuple[int, int]]:
    return [(i, min(i + BLOCK_ROWS, n)) for i in range(0, n, BLOCK_ROWS)]


def _run_blocks(tasks: list, workers: int) -> list[np.ndarray]:
    if workers <= 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: t(), tasks))


def pairwise_within(points: np.ndarray, metric: MetricSpec) -> np.ndarray:
    """Sorted distances over all unordered pairs inside one point set."""
    _check_rows(points, metric)
    kw = _cdist_kwargs(metric)
    spans = _blocks(points.shape[0])
    tasks = []
    for bi, (i0, i1) in enumerate(spans):
        for j0, j1 in spans[bi:]:
            if i0 == j0:
                tasks.append(lambda i0=i0, i1=i1: pdist(points[i0:i1], **kw))
            else:
                tasks.append(
                    lambda i0=i0, i1=i1, j0=j0, j1=j1: cdist(
                        points[i0:i1], points[j0:j1], **kw
                    ).ravel()
                )
    out = np.concatenate(_run_blocks(tasks, thread_count())) if tasks else np.empty(0)
    np.maximum(out, 0.0, out=out)
    out.sort()
    return out


def pairwise_between(a: np.ndarray, b: np.ndarray, metric: MetricSpec) -> np.ndarray:
    """Sorted distances over the full cross product of two point sets."""
    if a.shape[1] != b.shape[1]:
        raise ValidationError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    _check_rows(a, metric)
    _check_rows(b, metric)
    kw = _cdist_kwargs(metric)
    tasks = [
        lambda i0=i0, i1=i1, j0=j0, j1=j1: cdist(a[i0:i1], b[j0:j1], **kw).ravel()
        for i0, i1 in _blocks(a.shape[0])
        for j0, j1 in _blocks(b.shape[0])
    ]
    out = np.concatenate(_run_blocks(tasks, thread_count()))
    np.maximum(out, 0.0, out=out)
    out.sort()
    return out


def icd_set(data: LabeledDataset, class_id: int, metric: MetricSpec) -> DistanceSample:
    """Intra-class distance multiset: all m(m-1)/2 within-class pairs."""
    rows = data.class_rows(class_id)
    if rows.size < 2:
        raise ValidationError(f"ICD undefined for singleton class {class_id}")
    values = pairwise_within(data.points[rows], metric)
    return DistanceSample(values, f"icd:{class_id}")


def bcd_set(data: LabeledDataset, class_id: int, metric: MetricSpec) -> DistanceSample:
    """Between-class distance multiset: class versus the pooled rest."""
    rows = data.class_rows(class_id)
    mask = np.ones(data.n, dtype=bool)
    mask[rows] = False
    other = data.points[mask]
    if other.shape[0] == 0:
        raise ValidationError("BCD undefined: dataset has a single class")
    values = pairwise_between(data.points[rows], other, metric)
    return DistanceSample(values, f"bcd:{class_id}-vs-rest")
