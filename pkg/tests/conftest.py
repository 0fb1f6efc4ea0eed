"""
Shared pytest fixtures for the texture analysis toolkit.
"""
import os
import sys

# Add the repository root to Python path so tests can import config and the packages
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from classification.features import FeatureVector, LabeledSample
from imaging.gray_image import BinaryImage, GrayImage


@pytest.fixture
def constant_image():
    """64x64 image at 256 levels, every pixel 100."""
    return GrayImage(np.full((64, 64), 100), levels=256)


@pytest.fixture
def pair_count_image():
    """5x5 binary image with six (0,0) and ten (1,1) horizontal neighbour pairs."""
    rows = [
        [0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1],
        [1, 1, 1, 1, 1],
        [1, 1, 1, 1, 1],
        [1, 1, 0, 1, 0],
    ]
    return GrayImage(np.array(rows), levels=2)


def blob_points(seed=12345, per_class=20, sigma=0.3):
    """Two Gaussian blobs centred at +[1, 1] (label +1) and -[1, 1] (label -1)."""
    rng = np.random.default_rng(seed)
    positive = rng.normal(loc=(1.0, 1.0), scale=sigma, size=(per_class, 2))
    negative = rng.normal(loc=(-1.0, -1.0), scale=sigma, size=(per_class, 2))
    X = np.vstack([positive, negative])
    y = np.concatenate([np.ones(per_class), -np.ones(per_class)])
    return X, y


def samples_from_points(X, y):
    """LabeledSamples with the points in the first two slots and zeros elsewhere."""
    samples = []
    for point, label in zip(X, y):
        values = np.zeros(8)
        values[:len(point)] = point
        samples.append(LabeledSample(FeatureVector(values), int(label)))
    return samples


@pytest.fixture
def blob_dataset():
    return blob_points()


@pytest.fixture
def blob_samples():
    return samples_from_points(*blob_points())


@pytest.fixture
def single_pixel_binary():
    bits = np.zeros((8, 8), dtype=bool)
    bits[5, 5] = True
    return BinaryImage(bits)
