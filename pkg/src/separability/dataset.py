"""Labeled point-cloud data model, file ingestion and subsampling."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IngestionError, ValidationError

CIFAR10_PIXELS = 3072
CIFAR10_RECORD_BYTES = CIFAR10_PIXELS + 1


@dataclass(frozen=True)
class LabeledDataset:
    """n points in d dimensions with dense integer class labels.

    ``labels`` are dense ids 0..k-1 assigned in first-appearance order;
    ``label_names`` maps each dense id back to the original label string.
    Immutable after construction; arrays are not copied but are marked
    read-only.
    """

    points: np.ndarray
    labels: np.ndarray
    label_names: tuple[str, ...]

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        lab = np.asarray(self.labels, dtype=np.int64)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValidationError("points must be a non-empty n x d matrix")
        if lab.shape != (pts.shape[0],):
            raise ValidationError("labels length must equal number of rows")
        if not np.isfinite(pts).all():
            raise ValidationError("non-finite feature value in dataset")
        k = len(self.label_names)
        if lab.size and (lab.min() < 0 or lab.max() >= k):
            raise ValidationError("labels must be dense ids into label_names")
        pts.setflags(write=False)
        lab.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", lab)
        index = tuple(
            np.flatnonzero(lab == c) for c in range(k)
        )
        for idx in index:
            idx.setflags(write=False)
        object.__setattr__(self, "_class_index", index)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.label_names)

    @property
    def class_index(self) -> tuple[np.ndarray, ...]:
        """Row indices per dense class id; a partition of range(n)."""
        return self._class_index  # type: ignore[attr-defined]

    def class_rows(self, class_id: int) -> np.ndarray:
        if not 0 <= class_id < self.n_classes:
            raise ValidationError(f"unknown class id {class_id}")
        return self.class_index[class_id]

    def class_points(self, class_id: int) -> np.ndarray:
        return self.points[self.class_rows(class_id)]

    @classmethod
    def from_arrays(cls, points: np.ndarray, raw_labels: Sequence) -> "LabeledDataset":
        """Build a dataset, remapping arbitrary labels to dense ids.

        Dense ids follow first-appearance order of the raw labels.
        """
        names: list[str] = []
        seen: dict[str, int] = {}
        dense = np.empty(len(raw_labels), dtype=np.int64)
        for i, raw in enumerate(raw_labels):
            key = str(raw)
            if key not in seen:
                seen[key] = len(names)
                names.append(key)
            dense[i] = seen[key]
        return cls(np.asarray(points, dtype=np.float64), dense, tuple(names))


@dataclass(frozen=True)
class SubsampleConfig:
    """Repeated uniform row subsampling: fraction XOR count, plus trials/seed."""

    fraction: float | None = None
    count: int | None = None
    trials: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if (self.fraction is None) == (self.count is None):
            raise ValidationError("exactly one of fraction/count must be set")
        if self.fraction is not None and not 0.0 < self.fraction <= 1.0:
            raise ValidationError("fraction must be in (0, 1]")
        if self.count is not None and self.count < 2:
            raise ValidationError("count must be at least 2")
        if self.trials < 1:
            raise ValidationError("trials must be positive")
        if self.seed < 0:
            raise ValidationError("seed must be non-negative")

    def resolve_count(self, n: int) -> int:
        if self.count is not None:
            c = self.count
        else:
            c = int(round(self.fraction * n))  # type: ignore[operator]
        if c < 2:
            raise ValidationError(f"subsample of {c} rows is too small (need >= 2)")
        if c > n:
            raise ValidationError(f"subsample of {c} rows exceeds dataset size {n}")
        return c


def subsample(data: LabeledDataset, cfg: SubsampleConfig, trial_index: int) -> LabeledDataset:
    """One deterministic uniform subset (without replacement) of the rows.

    Selection depends only on (cfg.seed, trial_index). Selected rows keep
    their original relative order, so fraction=1.0 is the identity.
    Classes emptied by the selection are dropped from the class list.
    """
    if not 0 <= trial_index < cfg.trials:
        raise ValidationError(f"trial_index {trial_index} out of range for {cfg.trials} trials")
    count = cfg.resolve_count(data.n)
    if count == data.n:
        return data
    rng = np.random.default_rng([cfg.seed, trial_index])
    rows = np.sort(rng.choice(data.n, size=count, replace=False))
    raw = [data.label_names[c] for c in data.labels[rows]]
    return LabeledDataset.from_arrays(data.points[rows], raw)


def load_csv(
    path: str | os.PathLike,
    label_column: str | int,
    has_header: bool = True,
    delimiter: str = ",",
) -> LabeledDataset:
    """Read a delimited text file into a dataset.

    ``label_column`` is a header name (requires a header) or a zero-based
    column index. All other cells must parse as finite reals.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh, delimiter=delimiter)
        rows = [r for r in reader if r]
    if has_header:
        if not rows:
            raise IngestionError(f"{path}: empty file")
        header, rows = rows[0], rows[1:]
        if isinstance(label_column, str):
            if label_column not in header:
                raise IngestionError(f"{path}: label column {label_column!r} not in header")
            label_idx = header.index(label_column)
        else:
            label_idx = int(label_column)
    else:
        if isinstance(label_column, str):
            raise IngestionError("label column by name requires a header")
        label_idx = int(label_column)
    if not rows:
        raise IngestionError(f"{path}: empty dataset (no data rows)")
    ncol = len(rows[0])
    if not 0 <= label_idx < ncol:
        raise IngestionError(f"{path}: label column index {label_idx} out of range")
    points = np.empty((len(rows), ncol - 1), dtype=np.float64)
    raw_labels: list[str] = []
    for i, row in enumerate(rows):
        if len(row) != ncol:
            raise IngestionError(f"{path}: row {i + 1} has {len(row)} fields, expected {ncol}")
        j_out = 0
        for j, cell in enumerate(row):
            if j == label_idx:
                raw_labels.append(cell)
                continue
            try:
                value = float(cell)
            except ValueError as exc:
                raise IngestionError(
                    f"{path}: row {i + 1} column {j + 1}: cannot parse {cell!r}"
                ) from exc
            if not math.isfinite(value):
                raise IngestionError(
                    f"{path}: row {i + 1} column {j + 1}: non-finite value {cell!r}"
                )
            points[i, j_out] = value
            j_out += 1
    return LabeledDataset.from_arrays(points, raw_labels)


def write_csv(data: LabeledDataset, path: str | os.PathLike, delimiter: str = ",") -> None:
    """Write features as x0..x{d-1} plus a trailing ``label`` column.

    Floats are written with repr, so a load_csv round-trip is exact.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow([f"x{j}" for j in range(data.d)] + ["label"])
        for i in range(data.n):
            row = [repr(float(v)) for v in data.points[i]]
            row.append(data.label_names[data.labels[i]])
            writer.writerow(row)


def load_cifar10_binary(paths: Sequence[str | os.PathLike]) -> LabeledDataset:
    """Read CIFAR-10 batch files (3073-byte records, label byte first).

    Pixels are widened to float64 in [0, 255]; batches concatenate in
    argument order.
    """
    if not paths:
        raise IngestionError("no CIFAR-10 batch files given")
    chunks: list[np.ndarray] = []
    for p in paths:
        try:
            raw = np.fromfile(os.fspath(p), dtype=np.uint8)
        except OSError as exc:
            raise IngestionError(f"cannot read {p}: {exc}") from exc
        if raw.size == 0 or raw.size % CIFAR10_RECORD_BYTES != 0:
            raise IngestionError(
                f"{p}: malformed record ({raw.size} bytes is not a multiple of {CIFAR10_RECORD_BYTES})"
            )
        chunks.append(raw.reshape(-1, CIFAR10_RECORD_BYTES))
    records = np.concatenate(chunks, axis=0)
    labels = records[:, 0]
    if labels.max() > 9:
        bad = int(np.argmax(labels > 9))
        raise IngestionError(f"record {bad}: label byte {labels[bad]} > 9")
    points = records[:, 1:].astype(np.float64)
    return LabeledDataset.from_arrays(points, [str(c) for c in labels])
