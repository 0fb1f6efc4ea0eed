"""
Grayscale and binary image containers plus the region-of-interest preparation
steps: quantization, thresholding and cropping.
Pixel grids are stored row-major as (height, width) numpy arrays with a
top-left origin and are made read-only on construction.
"""
from dataclasses import dataclass

import numpy as np

import config
from errors import InvalidLevels, InvalidRoi

MAX_LEVELS = 256


def _frozen_array(values, dtype):
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GrayImage:
    """
    Rectangular grid of quantized intensities.

    Args:
        pixels: 2D array [height, width] of integers in [0, levels-1]
        levels: Number of gray levels L (2 <= L <= 256)
    """
    pixels: np.ndarray
    levels: int

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"Expected a non-empty 2D pixel grid, got shape {pixels.shape}")
        if not 2 <= int(self.levels) <= MAX_LEVELS:
            raise InvalidLevels(f"levels must be in [2, {MAX_LEVELS}], got {self.levels}")
        if pixels.min() < 0 or pixels.max() >= self.levels:
            raise ValueError(
                f"Pixel values must lie in [0, {self.levels - 1}], "
                f"got [{pixels.min()}, {pixels.max()}]"
            )
        object.__setattr__(self, 'pixels', _frozen_array(pixels, np.int64))
        object.__setattr__(self, 'levels', int(self.levels))

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.levels == other.levels and np.array_equal(self.pixels, other.pixels)

    def __hash__(self):
        return hash((self.levels, self.pixels.shape, self.pixels.tobytes()))


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Binary image; bit (row, col) is True where the pixel belongs to the set."""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise ValueError(f"Expected a non-empty 2D bit grid, got shape {bits.shape}")
        if bits.dtype != bool and not np.isin(bits, (0, 1)).all():
            raise ValueError("Binary image bits must be 0 or 1")
        object.__setattr__(self, 'bits', _frozen_array(bits, bool))

    @classmethod
    def from_gray(cls, img):
        """A GrayImage with levels = 2 is the same thing as a BinaryImage."""
        if img.levels != 2:
            raise InvalidLevels(f"Only 2-level images convert to binary, got {img.levels} levels")
        return cls(img.pixels == 1)

    def to_gray(self):
        return GrayImage(self.bits.astype(np.int64), levels=2)

    @property
    def width(self):
        return self.bits.shape[1]

    @property
    def height(self):
        return self.bits.shape[0]

    def count(self):
        """Number of set pixels."""
        return int(np.count_nonzero(self.bits))

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.bits.shape, self.bits.tobytes()))


@dataclass(frozen=True)
class Rect:
    """Region of interest: top-left offset (x, y) and extent (w, h) in pixels."""
    x: int
    y: int
    w: int
    h: int

    def inner(self, other):
        """Rectangle `other`, given relative to this one, in absolute coordinates."""
        return Rect(self.x + other.x, self.y + other.y, other.w, other.h)


def quantize(img, target_levels):
    """
    Uniform binning to fewer gray levels: p -> floor(p * target / levels).

    Raises:
        InvalidLevels: target_levels outside [2, img.levels]
    """
    if not 2 <= target_levels <= img.levels:
        raise InvalidLevels(
            f"target_levels must be in [2, {img.levels}], got {target_levels}"
        )
    if target_levels == img.levels:
        return img
    return GrayImage((img.pixels * target_levels) // img.levels, levels=target_levels)


def otsu_threshold(img):
    """
    Threshold maximizing the between-class variance of the image histogram.

    Candidate t splits the histogram into [0, t) and [t, L). Ties resolve to the
    smallest t. A single-valued image has no split with positive variance; its
    own value is returned so that every pixel stays foreground.
    """
    hist = np.bincount(img.pixels.ravel(), minlength=img.levels).astype(np.float64)
    prob = hist / hist.sum()
    levels = np.arange(img.levels, dtype=np.float64)

    omega = np.cumsum(prob)[:-1]          # weight of [0, t) for t = 1..L-1
    mu = np.cumsum(levels * prob)[:-1]
    mu_total = np.sum(levels * prob)

    denominator = omega * (1.0 - omega)
    valid = denominator > 0
    between = np.zeros_like(omega)
    between[valid] = (mu_total * omega[valid] - mu[valid]) ** 2 / denominator[valid]

    if not np.any(between > 0):
        return int(img.pixels.min())
    return int(np.argmax(between)) + 1


def threshold_binarize(img, threshold=config.THRESHOLD_MODE):
    """
    Binarize a region of interest: bit = 1 iff pixel >= threshold.

    Args:
        img: GrayImage
        threshold: Integer intensity in [0, L-1], or "auto" for Otsu's method

    Returns:
        BinaryImage
    """
    if isinstance(threshold, str):
        if threshold != "auto":
            raise ValueError(f"Unknown threshold mode {threshold!r}")
        threshold = otsu_threshold(img)
    elif not 0 <= int(threshold) < img.levels:
        raise InvalidLevels(f"threshold must be in [0, {img.levels - 1}], got {threshold}")
    return BinaryImage(img.pixels >= int(threshold))


def crop_roi(img, roi):
    """
    Copy the pixels of `roi` into a new image with the same number of levels.

    Raises:
        InvalidRoi: rectangle empty or not fully inside the image
    """
    if (roi.w < 1 or roi.h < 1 or roi.x < 0 or roi.y < 0
            or roi.x + roi.w > img.width or roi.y + roi.h > img.height):
        raise InvalidRoi(
            f"ROI {roi} does not fit a {img.width}x{img.height} image"
        )
    return GrayImage(img.pixels[roi.y:roi.y + roi.h, roi.x:roi.x + roi.w], levels=img.levels)


def boundary(img):
    """
    Set pixels with at least one in-image 4-neighbour unset.
    Neighbours outside the image do not make a pixel a boundary pixel.
    """
    padded = np.pad(img.bits, 1, constant_values=True)
    unset_neighbour = (
        ~padded[:-2, 1:-1] | ~padded[2:, 1:-1] | ~padded[1:-1, :-2] | ~padded[1:-1, 2:]
    )
    return BinaryImage(img.bits & unset_neighbour)
