"""
Per-dimension z-score scaling of feature vectors.
"""
import logging
from dataclasses import dataclass

import numpy as np

from errors import ShapeError, TooFewSamples
from .features import CORRELATION_SLOT, FEATURE_NAMES, FeatureVector, feature_matrix

logger = logging.getLogger(__name__)

# Standard deviations this small (relative to the mean) count as a constant dimension
_CONSTANT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class Normalizer:
    """
    Attributes:
        mean: Per-dimension mean, shape (8,)
        std: Per-dimension population standard deviation, all entries > 0
    """
    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=np.float64).ravel()
        std = np.array(self.std, dtype=np.float64).ravel()
        if mean.shape != (len(FEATURE_NAMES),) or std.shape != mean.shape:
            raise ShapeError(f"Normalizer needs {len(FEATURE_NAMES)} means and stddevs")
        if np.any(std <= 0):
            raise ValueError("Normalizer stddev entries must be positive")
        mean.setflags(write=False)
        std.setflags(write=False)
        object.__setattr__(self, 'mean', mean)
        object.__setattr__(self, 'std', std)

    @classmethod
    def identity(cls):
        return cls(np.zeros(len(FEATURE_NAMES)), np.ones(len(FEATURE_NAMES)))

    def transform(self, values, correlation_defined=None):
        """
        Normalize raw values of shape (8,) or (n, 8).
        Undefined correlations map to 0 in normalized space.
        """
        values = np.asarray(values, dtype=np.float64)
        if values.shape[-1] != len(FEATURE_NAMES):
            raise ShapeError(f"Expected {len(FEATURE_NAMES)} features, got {values.shape[-1]}")
        scaled = (values - self.mean) / self.std
        if correlation_defined is not None:
            undefined = ~np.asarray(correlation_defined, dtype=bool)
            scaled[..., CORRELATION_SLOT] = np.where(undefined, 0.0, scaled[..., CORRELATION_SLOT])
        return scaled

    def transform_samples(self, samples):
        X, _ = feature_matrix(samples)
        defined = np.array([s.features.correlation_defined for s in samples], dtype=bool)
        return self.transform(X, defined)


def fit_normalizer(samples):
    """
    Fit per-dimension mean and population stddev.

    Undefined correlations are left out of the correlation statistics.
    Constant dimensions get stddev 1.

    Raises:
        TooFewSamples: fewer than 2 samples
    """
    if len(samples) < 2:
        raise TooFewSamples(f"Normalizer needs at least 2 samples, got {len(samples)}")

    X, _ = feature_matrix(samples)
    mean = X.mean(axis=0)
    std = X.std(axis=0)

    defined = np.array([s.features.correlation_defined for s in samples], dtype=bool)
    if defined.any():
        column = X[defined, CORRELATION_SLOT]
        mean[CORRELATION_SLOT] = column.mean()
        std[CORRELATION_SLOT] = column.std()
    else:
        logger.debug("No sample has a defined correlation")
        mean[CORRELATION_SLOT] = 0.0
        std[CORRELATION_SLOT] = 1.0

    constant = std <= _CONSTANT_TOLERANCE * np.maximum(1.0, np.abs(mean))
    std[constant] = 1.0
    return Normalizer(mean, std)


def apply(normalizer, x):
    """Normalized copy of a FeatureVector."""
    return FeatureVector(
        normalizer.transform(x.values, x.correlation_defined),
        correlation_defined=x.correlation_defined,
    )
