import numpy as np
import pytest

from separability import LabeledDataset


def random_dataset(rng, n_classes=2, min_size=2, max_size=30, d=3):
    """Small random dataset with the requested class-size range."""
    sizes = rng.integers(min_size, max_size + 1, size=n_classes)
    points = []
    labels = []
    for c, m in enumerate(sizes):
        points.append(rng.normal(c * 2.0, 1.0, size=(m, d)))
        labels.extend([str(c)] * m)
    return LabeledDataset.from_arrays(np.concatenate(points), labels)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
