"""Distance-based separability index (DSI) for labeled datasets."""

from .core import ClassStat, DsiConfig, DsiReport, dsi_estimate, dsi_multiclass, dsi_two_class
from .dataset import (
    LabeledDataset,
    SubsampleConfig,
    load_cifar10_binary,
    load_csv,
    subsample,
    write_csv,
)
from .distrib import Ecdf, ks_distance, normalized_wasserstein, wasserstein_distance
from .errors import IngestionError, NumericError, SeparabilityError, ValidationError
from .metrics import (
    DistanceSample,
    MetricSpec,
    bcd_set,
    icd_set,
    mahalanobis_from_data,
    point_distance,
)
from .synth import FAMILIES, GeneratorSpec, generate, sweep

__version__ = "0.1.0"

__all__ = [
    "ClassStat",
    "DsiConfig",
    "DsiReport",
    "DistanceSample",
    "Ecdf",
    "FAMILIES",
    "GeneratorSpec",
    "IngestionError",
    "LabeledDataset",
    "MetricSpec",
    "NumericError",
    "SeparabilityError",
    "SubsampleConfig",
    "ValidationError",
    "bcd_set",
    "dsi_estimate",
    "dsi_multiclass",
    "dsi_two_class",
    "generate",
    "icd_set",
    "ks_distance",
    "load_cifar10_binary",
    "load_csv",
    "mahalanobis_from_data",
    "normalized_wasserstein",
    "point_distance",
    "subsample",
    "sweep",
    "wasserstein_distance",
    "write_csv",
]
