"""Acceptance suite: one test per criterion, with a pass line printed.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. The CIFAR-10 criterion needs the public binary batches on disk
(see DSI_CIFAR10_DIR below) and is skipped with a notice otherwise.
"""

import glob
import math
import os
import time

import numpy as np
import pytest

from separability import (
    DsiConfig,
    GeneratorSpec,
    LabeledDataset,
    MetricSpec,
    SubsampleConfig,
    bcd_set,
    dsi_estimate,
    dsi_multiclass,
    dsi_two_class,
    generate,
    icd_set,
    ks_distance,
    load_cifar10_binary,
    normalized_wasserstein,
    wasserstein_distance,
)

from test_distrib import ks_brute, w_brute

CIFAR_ENV = "DSI_CIFAR10_DIR"


def ok(name, detail=""):
    print(f"[PASS] {name}" + (f": {detail}" if detail else ""))


def test_criterion_1_same_distribution_limit():
    t0 = time.time()
    seeds = range(8)
    m1000 = np.mean(
        [dsi_two_class(generate(GeneratorSpec("random", 1000, seed=s))).dsi for s in seeds]
    )
    m2000 = np.mean(
        [dsi_two_class(generate(GeneratorSpec("random", 2000, seed=s))).dsi for s in seeds]
    )
    elapsed = time.time() - t0
    assert 0.004 <= m1000 <= 0.009
    assert 0.002 <= m2000 <= 0.005
    assert m2000 < m1000
    assert elapsed < 60
    ok(
        "criterion 1 (same-distribution limit)",
        f"mean@1000={m1000:.4f}, mean@2000={m2000:.4f}, {elapsed:.1f}s",
    )


def test_criterion_2_cardinality_exactness():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        k = int(rng.integers(2, 5))
        sizes = rng.integers(2, 61, size=k)
        points = rng.normal(size=(int(sizes.sum()), 2))
        labels = [str(c) for c, m in enumerate(sizes) for _ in range(m)]
        data = LabeledDataset.from_arrays(points, labels)
        for c, m in enumerate(sizes):
            assert icd_set(data, c, MetricSpec()).count == m * (m - 1) // 2
            assert bcd_set(data, c, MetricSpec()).count == m * (sizes.sum() - m)
    ok("criterion 2 (cardinality exactness)", "300 datasets, exact every time")


def test_criterion_3_ks_wasserstein_oracle():
    t0 = time.time()
    rng = np.random.default_rng(99)
    worst_ks = worst_w = 0.0
    for _ in range(200):
        p = rng.random(int(rng.integers(1, 101))) * 10
        q = rng.random(int(rng.integers(1, 101))) * 10
        worst_ks = max(worst_ks, abs(ks_distance(p, q) - ks_brute(p, q)))
        worst_w = max(worst_w, abs(wasserstein_distance(p, q) - w_brute(p, q)))
    elapsed = time.time() - t0
    assert worst_ks <= 1e-12
    assert worst_w <= 1e-12
    assert elapsed < 5
    ok(
        "criterion 3 (KS/W oracle equivalence)",
        f"max |dKS|={worst_ks:.2e}, max |dW|={worst_w:.2e}, {elapsed:.1f}s",
    )


def test_criterion_4_family_ordering():
    t0 = time.time()
    families = ["random", "spirals", "xor", "moons", "circles", "blobs"]
    complexity = {}
    for fam in families:
        data = generate(GeneratorSpec(fam, 1000, seed=1))
        complexity[fam] = 1.0 - dsi_two_class(data).dsi
    elapsed = time.time() - t0
    values = [complexity[f] for f in families]
    assert all(a > b for a, b in zip(values, values[1:])), complexity
    assert complexity["random"] > 0.98
    assert complexity["blobs"] < 0.10
    assert elapsed < 120
    ok(
        "criterion 4 (family ordering)",
        ", ".join(f"{f}={complexity[f]:.3f}" for f in families) + f", {elapsed:.1f}s",
    )


def test_criterion_5_cluster_sd_monotonicity():
    t0 = time.time()
    base = GeneratorSpec("blobs", 1000, seed=3)
    sds = range(1, 10)
    datasets = []
    for i, sd in enumerate(sds):
        datasets.append(generate(GeneratorSpec("blobs", 1000, noise_or_sd=float(sd), seed=base.seed + i)))
    for kind in ("euclidean", "cityblock", "chebyshev"):
        values = [dsi_multiclass(d, DsiConfig(metric=MetricSpec(kind))).dsi for d in datasets]
        assert all(a > b for a, b in zip(values, values[1:])), (kind, values)
    ks_vals = [dsi_multiclass(d, DsiConfig(divergence="ks")).dsi for d in datasets]
    w_vals = [dsi_multiclass(d, DsiConfig(divergence="wasserstein")).dsi for d in datasets]
    ks_spread = max(ks_vals) - min(ks_vals)
    w_spread = max(w_vals) - min(w_vals)
    elapsed = time.time() - t0
    assert ks_spread > w_spread
    assert elapsed < 120
    ok(
        "criterion 5 (cluster-SD monotonicity)",
        f"KS spread={ks_spread:.3f} > W spread={w_spread:.3f}, {elapsed:.1f}s",
    )


def _find_cifar_batches():
    root = os.environ.get(CIFAR_ENV, "")
    candidates = [root] if root else []
    candidates += ["data/cifar-10-batches-bin", "/root/data/cifar-10-batches-bin"]
    for base in candidates:
        batches = sorted(glob.glob(os.path.join(base, "data_batch_*.bin")))
        if len(batches) == 5:
            return batches
    return None


def test_criterion_6_cifar10_subsample():
    batches = _find_cifar_batches()
    if batches is None:
        pytest.skip(
            f"CIFAR-10 binary batches not found; set {CIFAR_ENV} to the "
            "cifar-10-batches-bin directory to run this criterion"
        )
    t0 = time.time()
    data = load_cifar10_binary(batches)
    assert data.n == 50_000 and data.d == 3072
    cfg = DsiConfig(subsample=SubsampleConfig(count=1000, trials=8, seed=7))
    mean, sd, _ = dsi_estimate(data, cfg)
    elapsed = time.time() - t0
    assert 0.090 <= mean <= 0.120
    assert 0.002 <= sd <= 0.012
    assert elapsed < 600
    ok(
        "criterion 6 (CIFAR-10 subsample)",
        f"mean={mean:.4f}, sd={sd:.4f}, {elapsed:.0f}s",
    )


def test_criterion_7_invariance_suite():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(20):
        sizes = rng.integers(5, 25, size=2)
        points = np.concatenate(
            [rng.normal(c * 1.5, 1.0, size=(m, 3)) for c, m in enumerate(sizes)]
        )
        labels = [str(c) for c, m in enumerate(sizes) for _ in range(m)]
        data = LabeledDataset.from_arrays(points, labels)
        base = dsi_multiclass(data).dsi

        swapped = LabeledDataset.from_arrays(
            points, [{"0": "1", "1": "0"}[lab] for lab in labels]
        )
        perm = rng.permutation(data.n)
        permuted = LabeledDataset.from_arrays(points[perm], [labels[i] for i in perm])

        theta = rng.uniform(0, 2 * math.pi)
        rot = np.array(
            [
                [math.cos(theta), -math.sin(theta), 0],
                [math.sin(theta), math.cos(theta), 0],
                [0, 0, 1],
            ]
        )
        moved = LabeledDataset.from_arrays(points @ rot.T + rng.normal(size=3), labels)
        scaled = LabeledDataset.from_arrays(points * rng.uniform(0.1, 10.0), labels)

        for variant in (swapped, permuted, moved, scaled):
            worst = max(worst, abs(dsi_multiclass(variant).dsi - base))
    assert worst < 1e-9
    ok("criterion 7 (invariance suite)", f"max |dDSI| = {worst:.2e}")


def test_criterion_8_determinism_under_parallelism(monkeypatch):
    from separability import metrics as metrics_mod

    # small blocks so the pairwise work really spans many parallel tasks
    monkeypatch.setattr(metrics_mod, "BLOCK_ROWS", 8)
    rng = np.random.default_rng(13)
    for _ in range(10):
        sizes = rng.integers(10, 40, size=3)
        points = np.concatenate(
            [rng.normal(c, 1.0, size=(m, 2)) for c, m in enumerate(sizes)]
        )
        labels = [str(c) for c, m in enumerate(sizes) for _ in range(m)]
        data = LabeledDataset.from_arrays(points, labels)
        os.environ["DSI_THREADS"] = "1"
        try:
            serial = dsi_multiclass(data).to_dict(include_timings=False)
            os.environ["DSI_THREADS"] = str(os.cpu_count() or 1)
            parallel = dsi_multiclass(data).to_dict(include_timings=False)
        finally:
            os.environ.pop("DSI_THREADS", None)
        assert serial == parallel
    ok("criterion 8 (determinism under parallelism)", "1 thread == max threads, 10 datasets")
