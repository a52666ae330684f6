"""Deterministic generators for six two-class 2-D dataset families.

Family shapes (fixed canonical forms):
  random  - both classes i.i.d. uniform on [0,1)^2
  spirals - two interleaved Archimedean arms, r = 0.1 + 0.9 t,
            theta = 3 pi t (+ pi for class 1), Gaussian noise
  xor     - uniform on [-1,1]^2, class by sign of x*y, axis points redrawn
  moons   - two interleaving half-circles, Gaussian noise
  circles - concentric circles, radii 1.0 and 0.5, Gaussian noise
  blobs   - isotropic Gaussians at (0,0) and (10,10) with the given SD
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import DsiConfig, DsiReport, dsi_multiclass
from .dataset import LabeledDataset
from .errors import ValidationError

FAMILIES = ("random", "spirals", "xor", "moons", "circles", "blobs")

DEFAULT_NOISE = {
    "random": 0.0,
    "spirals": 0.02,
    "xor": 0.0,
    "moons": 0.1,
    "circles": 0.05,
    "blobs": 1.0,
}

BLOB_CENTERS = ((0.0, 0.0), (10.0, 10.0))


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    points_per_class: int = 1000
    noise_or_sd: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.points_per_class < 2:
            raise ValidationError("points_per_class must be at least 2")
        if self.noise_or_sd is not None and self.noise_or_sd < 0:
            raise ValidationError("noise_or_sd must be non-negative")

    @property
    def noise(self) -> float:
        if self.noise_or_sd is None:
            return DEFAULT_NOISE[self.family]
        return self.noise_or_sd


def _gen_random(rng, n, _noise):
    return rng.random((n, 2)), rng.random((n, 2))


def _gen_blobs(rng, n, sd):
    c0, c1 = np.asarray(BLOB_CENTERS[0]), np.asarray(BLOB_CENTERS[1])
    return c0 + sd * rng.standard_normal((n, 2)), c1 + sd * rng.standard_normal((n, 2))


def _gen_moons(rng, n, noise):
    t0 = rng.uniform(0.0, np.pi, n)
    t1 = rng.uniform(0.0, np.pi, n)
    upper = np.column_stack([np.cos(t0), np.sin(t0)])
    lower = np.column_stack([1.0 - np.cos(t1), 0.5 - np.sin(t1)])
    upper += noise * rng.standard_normal(upper.shape)
    lower += noise * rng.standard_normal(lower.shape)
    return upper, lower


def _gen_circles(rng, n, noise):
    out: list[np.ndarray] = []
    for radius in (1.0, 0.5):
        theta = rng.uniform(0.0, 2.0 * np.pi, n)
        ring = radius * np.column_stack([np.cos(theta), np.sin(theta)])
        out.append(ring + noise * rng.standard_normal(ring.shape))
    return out[0], out[1]


def _gen_spirals(rng, n, noise):
    out: list[np.ndarray] = []
    for offset in (0.0, np.pi):
        t = rng.random(n)
        r = 0.1 + 0.9 * t
        theta = 3.0 * np.pi * t + offset
        arm = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        out.append(arm + noise * rng.standard_normal(arm.shape))
    return out[0], out[1]


def _gen_xor(rng, n, _noise):
    pos: list[np.ndarray] = []
    neg: list[np.ndarray] = []
    n_pos = n_neg = 0
    while n_pos < n or n_neg < n:
        batch = rng.uniform(-1.0, 1.0, (4 * n, 2))
        prod = batch[:, 0] * batch[:, 1]
        keep_pos = batch[prod > 0]
        keep_neg = batch[prod < 0]
        pos.append(keep_pos)
        neg.append(keep_neg)
        n_pos += keep_pos.shape[0]
        n_neg += keep_neg.shape[0]
    return np.concatenate(pos)[:n], np.concatenate(neg)[:n]


_GENERATORS = {
    "random": _gen_random,
    "spirals": _gen_spirals,
    "xor": _gen_xor,
    "moons": _gen_moons,
    "circles": _gen_circles,
    "blobs": _gen_blobs,
}


def generate(spec: GeneratorSpec) -> LabeledDataset:
    """Build the two-class dataset for the spec; bit-identical per seed."""
    rng = np.random.default_rng(spec.seed)
    a, b = _GENERATORS[spec.family](rng, spec.points_per_class, spec.noise)
    points = np.concatenate([a, b])
    labels = ["0"] * spec.points_per_class + ["1"] * spec.points_per_class
    return LabeledDataset.from_arrays(points, labels)


def sweep(
    base: GeneratorSpec, param_values, cfg: DsiConfig | None = None
) -> list[tuple[float, DsiReport]]:
    """Regenerate per parameter value (seed varied per index) and run DSI."""
    params = list(param_values)
    if not params:
        raise ValidationError("empty parameter list")
    cfg = cfg or DsiConfig()
    out: list[tuple[float, DsiReport]] = []
    for i, p in enumerate(params):
        spec = replace(base, noise_or_sd=float(p), seed=base.seed + i)
        out.append((float(p), dsi_multiclass(generate(spec), cfg)))
    return out
