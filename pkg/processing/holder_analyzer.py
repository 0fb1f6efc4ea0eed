"""
Multifractal analysis of grayscale intensity.

The measure of a centred w x w window is its intensity sum divided by the image
total. Each pixel gets a Hoelder exponent alpha, the slope of ln mu against
ln(w / max(W, H)) over the configured window sizes. Pixels are then binned by
alpha and the box-counting dimension of every level set gives f(alpha).

Windows reaching past the border repeat the edge pixels. A constant image then
has alpha = 2 at every pixel, borders included. The cost is that border
windows can weigh an edge pixel several times, so mass concentrated on an
edge or corner gets an alpha well above the value it would have in the
interior (a corner point mass lands near 1.67 instead of 0).
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

import config
from errors import EmptySupport, ZeroMeasure
from imaging.gray_image import BinaryImage
from .fractal_analyzer import box_counting_dimension

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HolderImage:
    """
    Per-pixel Hoelder exponents.

    Attributes:
        alpha: 2D float array [height, width]; +inf marks pixels without a
               defined exponent (fewer than two windows with positive mass)
        window_sizes: Window sides used for the regression
    """
    alpha: np.ndarray
    window_sizes: tuple

    @property
    def width(self):
        return self.alpha.shape[1]

    @property
    def height(self):
        return self.alpha.shape[0]

    @property
    def finite_mask(self):
        return np.isfinite(self.alpha)

    @property
    def n_undefined(self):
        return int(np.count_nonzero(~self.finite_mask))


@dataclass(frozen=True)
class MultifractalSpectrum:
    """
    Discrete f(alpha) spectrum.

    Attributes:
        bins: ((alpha_center, f_alpha), ...) sorted by ascending alpha;
              empty level sets are omitted
        bin_width: Width of every alpha bin
        counts: Pixels in each listed bin, aligned with bins
        n_undefined: Pixels left out because their alpha was undefined
        estimates: FractalEstimate of each level set, aligned with bins
    """
    bins: tuple
    bin_width: float
    counts: tuple = ()
    n_undefined: int = 0
    estimates: tuple = ()

    @property
    def alphas(self):
        return np.array([a for a, _ in self.bins], dtype=np.float64)

    @property
    def f_values(self):
        return np.array([f for _, f in self.bins], dtype=np.float64)


class SpectrumSummary(NamedTuple):
    alpha_peak: float
    f_max: float
    width: float


def _validate_windows(window_sizes):
    sizes = tuple(int(w) for w in window_sizes)
    if len(sizes) < 2:
        raise ValueError(f"Need at least 2 window sizes, got {sizes}")
    if any(w < 1 or w % 2 == 0 for w in sizes):
        raise ValueError(f"Window sizes must be odd and positive, got {sizes}")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"Window sizes must be strictly increasing, got {sizes}")
    return sizes


def window_sums(pixels, window):
    """
    Sum of every centred window x window neighbourhood.
    Pixels outside the image repeat the nearest edge pixel.
    """
    radius = window // 2
    padded = np.pad(pixels.astype(np.int64), radius, mode='edge')
    integral = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1), dtype=np.int64)
    integral[1:, 1:] = padded.cumsum(axis=0).cumsum(axis=1)
    return (integral[window:, window:] - integral[:-window, window:]
            - integral[window:, :-window] + integral[:-window, :-window])


def holder_image(img, window_sizes=config.HOLDER_WINDOWS):
    """
    Compute the Hoelder exponent of every pixel.

    Args:
        img: GrayImage
        window_sizes: Strictly increasing odd window sides (at least two)

    Returns:
        HolderImage

    Raises:
        ZeroMeasure: the image has zero total intensity
    """
    sizes = _validate_windows(window_sizes)
    total = int(img.pixels.sum())
    if total == 0:
        raise ZeroMeasure("Image has zero total intensity")

    side = max(img.width, img.height)
    log_scales = np.log(np.array(sizes, dtype=np.float64) / side)

    # Masked least squares over the scale axis
    n = np.zeros(img.pixels.shape, dtype=np.float64)
    sum_x = np.zeros_like(n)
    sum_y = np.zeros_like(n)
    sum_xx = np.zeros_like(n)
    sum_xy = np.zeros_like(n)
    for window, x in zip(sizes, log_scales):
        mass = window_sums(img.pixels, window)
        valid = mass > 0
        y = np.log(np.where(valid, mass, 1) / total)
        n += valid
        sum_x += valid * x
        sum_y += np.where(valid, y, 0.0)
        sum_xx += valid * (x * x)
        sum_xy += np.where(valid, x * y, 0.0)

    alpha = np.full(img.pixels.shape, np.inf)
    defined = n >= 2
    denominator = n * sum_xx - sum_x * sum_x
    alpha[defined] = ((n * sum_xy - sum_x * sum_y)[defined] / denominator[defined])
    alpha.setflags(write=False)

    result = HolderImage(alpha=alpha, window_sizes=sizes)
    if result.n_undefined:
        logger.debug("%d pixels have no defined Hoelder exponent", result.n_undefined)
    return result


def multifractal_spectrum(holder, n_bins=config.SPECTRUM_BINS, sizes=None):
    """
    Bin finite exponents into n_bins equal intervals and estimate the
    box-counting dimension of each non-empty level set.

    Args:
        holder: HolderImage
        n_bins: Number of alpha bins (>= 1)
        sizes: Box sides for the level-set dimensions (default powers of two)

    Returns:
        MultifractalSpectrum

    Raises:
        EmptySupport: no pixel has a finite exponent
    """
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    finite = holder.finite_mask
    if not np.any(finite):
        raise EmptySupport("No pixel has a finite Hoelder exponent")

    values = holder.alpha[finite]
    alpha_min = float(values.min())
    alpha_max = float(values.max())
    spread = alpha_max - alpha_min

    if spread <= config.SPECTRUM_FLAT_TOLERANCE:
        # Collapsed exponent range: the whole finite support is one level set
        logger.debug("Hoelder exponents collapse to %.6g, using a single bin", alpha_min)
        level = BinaryImage(finite)
        estimate = box_counting_dimension(level, sizes)
        return MultifractalSpectrum(
            bins=((0.5 * (alpha_min + alpha_max), estimate.dimension),),
            bin_width=config.SPECTRUM_FLAT_TOLERANCE,
            counts=(level.count(),),
            n_undefined=holder.n_undefined,
            estimates=(estimate,),
        )

    bin_width = spread / n_bins
    index = np.full(holder.alpha.shape, -1, dtype=np.int64)
    # The top edge belongs to the last bin
    index[finite] = np.clip(np.floor((values - alpha_min) / bin_width).astype(np.int64), 0, n_bins - 1)

    bins, counts, estimates = [], [], []
    for b in range(n_bins):
        members = index == b
        count = int(np.count_nonzero(members))
        if count == 0:
            continue
        estimate = box_counting_dimension(BinaryImage(members), sizes)
        bins.append((alpha_min + (b + 0.5) * bin_width, estimate.dimension))
        counts.append(count)
        estimates.append(estimate)

    return MultifractalSpectrum(
        bins=tuple(bins),
        bin_width=bin_width,
        counts=tuple(counts),
        n_undefined=holder.n_undefined,
        estimates=tuple(estimates),
    )


def spectrum_summary(spectrum):
    """
    Peak location, peak height and alpha width of a spectrum.
    Equal peaks resolve to the smallest alpha.
    """
    if not spectrum.bins:
        raise EmptySupport("Spectrum has no bins")
    alphas = spectrum.alphas
    f_values = spectrum.f_values
    peak = int(np.argmax(f_values))
    return SpectrumSummary(
        alpha_peak=float(alphas[peak]),
        f_max=float(f_values[peak]),
        width=float(alphas.max() - alphas.min()),
    )
