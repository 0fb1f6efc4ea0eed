"""
Box-counting fractal dimension of binary images.
Counts occupied grid cells N(lambda) for a cascade of box sides lambda and
estimates the dimension as the least-squares slope of ln N against ln(1/lambda).
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import stats

from errors import DegenerateRegression, EmptySupport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FractalEstimate:
    """
    Result of a log-log regression.

    Attributes:
        dimension: Slope D_f of ln N(lambda) against ln(1/lambda)
        r_squared: Coefficient of determination of the fit, in [0, 1]
        points: ((ln(1/lambda), ln N(lambda)), ...) used by the fit
        box_sizes: Box sides lambda in pixels, aligned with points
        counts: N(lambda), aligned with points
    """
    dimension: float
    r_squared: float
    points: tuple
    box_sizes: tuple = ()
    counts: tuple = ()

    def to_csv_rows(self):
        """
        Rows of a log-log dump: a "lambda,count" header, one row per box size,
        then a "dimension,r2" record followed by its values.
        """
        rows = [("lambda", "count")]
        rows.extend((size, count) for size, count in zip(self.box_sizes, self.counts))
        rows.append(("dimension", "r2"))
        rows.append((repr(self.dimension), repr(self.r_squared)))
        return rows


def fit_loglog(log_x, log_y):
    """
    Least-squares line through (log_x, log_y).

    Returns:
        tuple: (slope, intercept, r_squared)
    """
    log_x = np.asarray(log_x, dtype=np.float64)
    log_y = np.asarray(log_y, dtype=np.float64)
    fit = stats.linregress(log_x, log_y)

    predicted = fit.slope * log_x + fit.intercept
    ss_res = np.sum((log_y - predicted) ** 2)
    ss_tot = np.sum((log_y - np.mean(log_y)) ** 2)
    # A flat set of points is fitted exactly by a zero slope
    r_squared = 1 - (ss_res / ss_tot) if ss_tot > 0 else 1.0
    return float(fit.slope), float(fit.intercept), float(min(max(r_squared, 0.0), 1.0))


def default_box_sizes(width, height):
    """Powers of two from 1 to half the short side (at least [1])."""
    limit = min(width, height) // 2
    sizes = [1]
    while sizes[-1] * 2 <= limit:
        sizes.append(sizes[-1] * 2)
    return sizes


def box_count(img, box_size):
    """
    Number of box_size x box_size cells holding at least one set pixel.
    The grid is anchored at (0, 0); ragged cells at the right and bottom edges
    count like full cells.
    """
    if box_size < 1:
        raise ValueError(f"box_size must be >= 1, got {box_size}")
    height, width = img.bits.shape
    rows = -(-height // box_size)
    cols = -(-width // box_size)

    padded = np.zeros((rows * box_size, cols * box_size), dtype=bool)
    padded[:height, :width] = img.bits
    occupied = padded.reshape(rows, box_size, cols, box_size).any(axis=(1, 3))
    return int(np.count_nonzero(occupied))


def box_counting_dimension(img, sizes=None):
    """
    Estimate the box-counting dimension of a binary image.

    Args:
        img: BinaryImage with at least one set pixel
        sizes: Box sides in pixels (default: powers of two up to half the short side)

    Returns:
        FractalEstimate

    Raises:
        EmptySupport: no set pixel
        DegenerateRegression: fewer than two usable box sizes
    """
    if img.count() == 0:
        raise EmptySupport("Box counting needs at least one set pixel")

    if sizes is None:
        sizes = default_box_sizes(img.width, img.height)
    sizes = sorted({int(s) for s in sizes})
    short_side = min(img.width, img.height)
    out_of_range = [s for s in sizes if s < 1 or s > short_side]
    if out_of_range:
        raise ValueError(f"Box sizes {out_of_range} outside [1, {short_side}]")

    used_sizes = []
    counts = []
    for size in sizes:
        count = box_count(img, size)
        if count == 0:
            logger.debug("Box size %d has no occupied cell, excluded", size)
            continue
        used_sizes.append(size)
        counts.append(count)

    if len(used_sizes) < 2:
        raise DegenerateRegression(
            f"Need at least 2 box sizes with occupied cells, got {len(used_sizes)}"
        )

    log_inv_scale = -np.log(np.array(used_sizes, dtype=np.float64))
    log_count = np.log(np.array(counts, dtype=np.float64))
    slope, _, r_squared = fit_loglog(log_inv_scale, log_count)

    return FractalEstimate(
        dimension=slope,
        r_squared=r_squared,
        points=tuple(zip(log_inv_scale.tolist(), log_count.tolist())),
        box_sizes=tuple(used_sizes),
        counts=tuple(counts),
    )
