"""
Gray-level co-occurrence matrices and Haralick texture features.
Pixel (x, y) pairs with (x + dx, y + dy); y grows downwards, so the 45 degree
direction at distance d is (d, -d).
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

import config
from errors import InvalidLevels, NoValidPairs, NotNormalized
from imaging.gray_image import quantize

logger = logging.getLogger(__name__)

# Unit steps per direction in degrees, scaled by the distance
DIRECTION_STEPS = {
    0: (1, 0),
    45: (1, -1),
    90: (0, -1),
    135: (-1, -1),
}

FEATURE_NAMES = ("contrast", "correlation", "energy", "homogeneity")


@dataclass(frozen=True)
class Offset:
    dx: int
    dy: int

    def __post_init__(self):
        if self.dx == 0 and self.dy == 0:
            raise ValueError("Offset (0, 0) pairs every pixel with itself")

    @classmethod
    def for_direction(cls, angle, distance):
        if distance < 1:
            raise ValueError(f"distance must be >= 1, got {distance}")
        if angle not in DIRECTION_STEPS:
            raise ValueError(f"Unsupported direction {angle}, expected one of {sorted(DIRECTION_STEPS)}")
        step_x, step_y = DIRECTION_STEPS[angle]
        return cls(step_x * distance, step_y * distance)


def direction_offsets(distance):
    """{angle: Offset} for the four standard directions."""
    return {angle: Offset.for_direction(angle, distance) for angle in DIRECTION_STEPS}


@dataclass(frozen=True, eq=False)
class GLCMatrix:
    """
    Co-occurrence matrix.

    Attributes:
        probs: L x L float array, the normalized matrix P
        counts: L x L integer pair counts before normalization (None when the
                matrix was built directly from probabilities)
        symmetric: True if counts include both (i, j) and (j, i) for each pair
    """
    probs: np.ndarray
    counts: Optional[np.ndarray] = None
    symmetric: bool = False

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 2 or probs.shape[0] != probs.shape[1]:
            raise ValueError(f"GLCM must be square, got shape {probs.shape}")
        object.__setattr__(self, 'probs', probs)

    @classmethod
    def from_counts(cls, counts, symmetric=False):
        counts = np.asarray(counts, dtype=np.int64)
        total = counts.sum()
        if total <= 0:
            raise NoValidPairs("Co-occurrence matrix has no pairs")
        return cls(probs=counts / total, counts=counts, symmetric=symmetric)

    @property
    def levels(self):
        return self.probs.shape[0]

    @property
    def total(self):
        return int(self.counts.sum()) if self.counts is not None else None


@dataclass(frozen=True)
class GlcmFeatures:
    contrast: float
    correlation: Optional[float]
    energy: float
    homogeneity: float

    @property
    def correlation_defined(self):
        return self.correlation is not None

    def as_dict(self):
        return {name: getattr(self, name) for name in FEATURE_NAMES}


def compute_glcm(img, offset, symmetric=config.GLCM_SYMMETRIC):
    """
    Count co-occurring gray levels for every in-bounds pair (p, p + offset).

    Args:
        img: GrayImage
        offset: Offset
        symmetric: Add the transpose so (i, j) and (j, i) count alike

    Returns:
        GLCMatrix

    Raises:
        NoValidPairs: the offset leaves no pair inside the image
    """
    height, width = img.pixels.shape
    dx, dy = offset.dx, offset.dy
    if abs(dx) >= width or abs(dy) >= height:
        raise NoValidPairs(f"Offset ({dx}, {dy}) leaves no pair in a {width}x{height} image")

    src = img.pixels[max(0, -dy):height - max(0, dy), max(0, -dx):width - max(0, dx)]
    dst = img.pixels[max(0, dy):height - max(0, -dy), max(0, dx):width - max(0, -dx)]

    levels = img.levels
    counts = np.bincount((src * levels + dst).ravel(), minlength=levels * levels)
    counts = counts.reshape(levels, levels).astype(np.int64)
    if symmetric:
        counts = counts + counts.T
    return GLCMatrix.from_counts(counts, symmetric=symmetric)


def haralick_features(matrix):
    """
    Contrast, correlation, energy and homogeneity of a normalized GLCM.

    Energy is the angular second moment sum(P^2). Correlation is None when the
    marginal variance is numerically zero.

    Raises:
        NotNormalized: entries negative or not summing to 1
    """
    probs = matrix.probs
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > config.GLCM_NORMALIZATION_TOLERANCE:
        raise NotNormalized(f"GLCM entries sum to {probs.sum():.12g}, expected 1")

    i, j = np.indices(probs.shape, dtype=np.float64)
    diff_sq = (i - j) ** 2

    contrast = float(np.sum(probs * diff_sq))
    energy = float(np.sum(probs * probs))
    homogeneity = float(np.sum(probs / (1.0 + diff_sq)))

    mean = float(np.sum(i * probs))
    variance = float(np.sum(probs * (i - mean) ** 2))
    if variance <= config.GLCM_VARIANCE_EPSILON:
        correlation = None
    else:
        correlation = float(np.sum(probs * (i - mean) * (j - mean)) / variance)

    return GlcmFeatures(contrast, correlation, energy, homogeneity)


def _prepare(img, levels):
    if levels < 2:
        raise InvalidLevels(f"GLCM levels must be >= 2, got {levels}")
    return quantize(img, levels) if img.levels > levels else img


def directional_features(img, distance=config.GLCM_DISTANCE, levels=config.GLCM_LEVELS):
    """{angle: GlcmFeatures} for 0, 45, 90 and 135 degrees."""
    prepared = _prepare(img, levels)
    return {
        angle: haralick_features(compute_glcm(prepared, offset))
        for angle, offset in direction_offsets(distance).items()
    }


def averaged_features(img, distance=config.GLCM_DISTANCE, levels=config.GLCM_LEVELS):
    """
    Mean Haralick features over the four directions.

    The image is quantized to `levels` only when it has more gray levels.
    Correlation is None if it is undefined in any direction.
    """
    per_direction = list(directional_features(img, distance, levels).values())
    correlations = [f.correlation for f in per_direction]
    return GlcmFeatures(
        contrast=float(np.mean([f.contrast for f in per_direction])),
        correlation=None if None in correlations else float(np.mean(correlations)),
        energy=float(np.mean([f.energy for f in per_direction])),
        homogeneity=float(np.mean([f.homogeneity for f in per_direction])),
    )


def directional_feature_ranges(img, distance=config.GLCM_DISTANCE, levels=config.GLCM_LEVELS):
    """
    Spread of each feature across the four directions.

    Returns:
        dict: {feature_name: (min, max)}; correlation maps to None when it is
              undefined in any direction
    """
    per_direction = [f.as_dict() for f in directional_features(img, distance, levels).values()]
    ranges = {}
    for name in FEATURE_NAMES:
        values = [f[name] for f in per_direction]
        if None in values:
            ranges[name] = None
        else:
            ranges[name] = (float(min(values)), float(max(values)))
    return ranges
