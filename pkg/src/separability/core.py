"""The distance-based separability index (DSI).

For each class the intra-class distance multiset is compared against the
class-versus-rest distance multiset with a two-sample divergence (KS by
default); the DSI is the unweighted mean of the per-class statistics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .dataset import LabeledDataset, SubsampleConfig, subsample
from .distrib import ks_distance, normalized_wasserstein
from .errors import ValidationError
from .metrics import MetricSpec, bcd_set, icd_set, mahalanobis_from_data

DIVERGENCES = ("ks", "wasserstein")

_DIVERGENCE_FN = {
    "ks": ks_distance,
    "wasserstein": normalized_wasserstein,
}


@dataclass(frozen=True)
class DsiConfig:
    metric: MetricSpec = field(default_factory=MetricSpec)
    divergence: str = "ks"
    subsample: SubsampleConfig | None = None

    def __post_init__(self) -> None:
        if self.divergence not in DIVERGENCES:
            raise ValidationError(
                f"unknown divergence {self.divergence!r}; choose from {DIVERGENCES}"
            )


@dataclass(frozen=True)
class ClassStat:
    class_id: int
    label: str
    statistic: float
    icd_count: int
    bcd_count: int


@dataclass(frozen=True)
class DsiReport:
    per_class: tuple[ClassStat, ...]
    dsi: float
    metric: str
    divergence: str
    timings: dict[str, float]

    def to_dict(self, include_timings: bool = True) -> dict:
        doc = {
            "dsi": self.dsi,
            "metric": self.metric,
            "divergence": self.divergence,
            "per_class": [
                {
                    "class_id": s.class_id,
                    "label": s.label,
                    "statistic": s.statistic,
                    "icd_count": s.icd_count,
                    "bcd_count": s.bcd_count,
                }
                for s in self.per_class
            ],
        }
        if include_timings:
            doc["timings"] = self.timings
        return doc


def _resolve_metric(metric: MetricSpec, data: LabeledDataset) -> MetricSpec:
    if metric.kind == "mahalanobis" and metric.inverse_covariance is None:
        return mahalanobis_from_data(data)
    return metric


def dsi_multiclass(data: LabeledDataset, cfg: DsiConfig | None = None) -> DsiReport:
    """One-versus-others DSI over all classes of the dataset."""
    cfg = cfg or DsiConfig()
    if data.n_classes < 2:
        raise ValidationError("need at least 2 classes to compute DSI")
    for c in range(data.n_classes):
        if data.class_rows(c).size < 2:
            raise ValidationError(
                f"class {data.label_names[c]!r} has a single point; DSI undefined"
            )
    metric = _resolve_metric(cfg.metric, data)
    div = _DIVERGENCE_FN[cfg.divergence]
    stats: list[ClassStat] = []
    t_dist = 0.0
    t_div = 0.0
    for c in range(data.n_classes):
        t0 = time.perf_counter()
        icd = icd_set(data, c, metric)
        bcd = bcd_set(data, c, metric)
        t1 = time.perf_counter()
        s = div(icd, bcd)
        t2 = time.perf_counter()
        t_dist += t1 - t0
        t_div += t2 - t1
        stats.append(ClassStat(c, data.label_names[c], s, icd.count, bcd.count))
    dsi = float(np.mean([s.statistic for s in stats]))
    return DsiReport(
        per_class=tuple(stats),
        dsi=dsi,
        metric=metric.kind,
        divergence=cfg.divergence,
        timings={"distances_s": t_dist, "divergence_s": t_div},
    )


def dsi_two_class(data: LabeledDataset, cfg: DsiConfig | None = None) -> DsiReport:
    """DSI for exactly two classes: mean of the two per-class KS statistics.

    For two classes the class-versus-rest distance sets coincide with the
    single between-class set, so this agrees exactly with dsi_multiclass.
    """
    if data.n_classes != 2:
        raise ValidationError(f"expected exactly 2 classes, got {data.n_classes}")
    return dsi_multiclass(data, cfg)


def dsi_estimate(
    data: LabeledDataset, cfg: DsiConfig
) -> tuple[float, float, list[DsiReport]]:
    """Mean/SD of the DSI over repeated random subsets of the rows.

    SD uses the n-1 denominator and is 0.0 for a single trial.
    """
    if cfg.subsample is None:
        raise ValidationError("dsi_estimate requires a subsample config")
    sub = cfg.subsample
    reports: list[DsiReport] = []
    for trial in range(sub.trials):
        subset = subsample(data, sub, trial)
        if subset.n_classes < 2:
            raise ValidationError(
                f"trial {trial}: fewer than 2 classes survived subsampling"
            )
        reports.append(dsi_multiclass(subset, cfg))
    values = np.array([r.dsi for r in reports])
    mean = float(values.mean())
    sd = float(values.std(ddof=1)) if values.size > 1 else 0.0
    return mean, sd, reports
