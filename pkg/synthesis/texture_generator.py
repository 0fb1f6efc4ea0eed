"""
Synthetic textures with known ground truth.

Geometric kinds (sierpinski, filled_rect, hline, checkerboard, stripes) are
2-level images. rough_field is a seeded midpoint-displacement (diamond-square)
height field, optionally overlaid with vertical stripes, skewed by a power,
inverted and mapped onto a gray range.
"""
import logging
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

import config
from errors import InvalidSpec
from imaging.gray_image import GrayImage

logger = logging.getLogger(__name__)

KINDS = ("sierpinski", "filled_rect", "hline", "checkerboard", "stripes", "rough_field")
ROUGH_FIELD_MIN_SIZE = 8


@dataclass(frozen=True)
class TextureSpec:
    """
    Generator parameters. Only the fields used by `kind` matter.

    Attributes:
        kind: One of KINDS
        size: Side of the square image in pixels
        depth: Sierpinski recursion depth
        period: Stripe period or checkerboard cell side, pixels
        margin: Unfilled border of filled_rect, pixels
        roughness: Hurst-like h in (0, 1) of rough_field; lower is rougher
        stripe_gain: rough_field stripe amplitude as a fraction of the field range
        stripe_period: rough_field stripe period, pixels
        levels: Gray levels of rough_field
        seed: rough_field random seed
        skew: Exponent applied to the rescaled field; > 1 leaves sparse bright peaks
        inverted: Mirror the skewed field so peaks become pits
        gray_range: (low, high) gray values the field is mapped onto;
                    None means (0, levels - 1)
    """
    kind: str
    size: int
    depth: int = 0
    period: int = 2
    margin: int = 0
    roughness: float = 0.5
    stripe_gain: float = 0.0
    stripe_period: int = config.SYNTH_STRIPE_PERIOD
    levels: int = 256
    seed: int = 0
    skew: float = 1.0
    inverted: bool = False
    gray_range: Optional[tuple] = None

    @property
    def value_range(self):
        if self.gray_range is None:
            return 0, self.levels - 1
        return tuple(int(v) for v in self.gray_range)

    def params_text(self):
        """Kind-specific parameters as 'key=value;...' for manifests."""
        if self.kind == "sierpinski":
            fields = {"depth": self.depth}
        elif self.kind == "filled_rect":
            fields = {"margin": self.margin}
        elif self.kind in ("checkerboard", "stripes"):
            fields = {"period": self.period}
        elif self.kind == "rough_field":
            fields = {
                "h": self.roughness, "gain": self.stripe_gain,
                "stripe_period": self.stripe_period, "levels": self.levels,
                "skew": self.skew, "inverted": int(self.inverted),
                "range": "-".join(str(v) for v in self.value_range), "seed": self.seed,
            }
        else:
            fields = {}
        return ";".join(f"{key}={value}" for key, value in fields.items())


class SyntheticImage(NamedTuple):
    image: GrayImage
    label: int
    spec: TextureSpec
    name: str


def _is_power_of_two(n):
    return n >= 1 and n & (n - 1) == 0


def _validate(spec):
    if spec.kind not in KINDS:
        raise InvalidSpec(f"Unknown texture kind {spec.kind!r}, expected one of {KINDS}")
    if spec.size < 2:
        raise InvalidSpec(f"size must be >= 2, got {spec.size}")

    if spec.kind == "sierpinski":
        if spec.depth < 0:
            raise InvalidSpec(f"depth must be >= 0, got {spec.depth}")
        if not _is_power_of_two(spec.size) or spec.size < 2 ** spec.depth:
            raise InvalidSpec(
                f"sierpinski size must be a power of two >= 2^depth, got {spec.size} for depth {spec.depth}"
            )
    elif spec.kind == "filled_rect":
        if spec.margin < 0 or 2 * spec.margin >= spec.size:
            raise InvalidSpec(f"margin {spec.margin} leaves nothing of a {spec.size} image")
    elif spec.kind == "checkerboard":
        if spec.period < 1:
            raise InvalidSpec(f"checkerboard cell side must be >= 1, got {spec.period}")
    elif spec.kind == "stripes":
        if spec.period < 2:
            raise InvalidSpec(f"stripe period must be >= 2, got {spec.period}")
    elif spec.kind == "rough_field":
        if not _is_power_of_two(spec.size) or spec.size < ROUGH_FIELD_MIN_SIZE:
            raise InvalidSpec(
                f"rough_field size must be a power of two >= {ROUGH_FIELD_MIN_SIZE}, got {spec.size}"
            )
        if not 0 < spec.roughness < 1:
            raise InvalidSpec(f"roughness must be in (0, 1), got {spec.roughness}")
        if spec.stripe_gain < 0:
            raise InvalidSpec(f"stripe_gain must be >= 0, got {spec.stripe_gain}")
        if spec.stripe_period < 2:
            raise InvalidSpec(f"stripe_period must be >= 2, got {spec.stripe_period}")
        if not 2 <= spec.levels <= 256:
            raise InvalidSpec(f"levels must be in [2, 256], got {spec.levels}")
        if not spec.skew > 0:
            raise InvalidSpec(f"skew must be > 0, got {spec.skew}")
        low, high = spec.value_range
        if not 0 <= low < high <= spec.levels - 1:
            raise InvalidSpec(f"gray_range must satisfy 0 <= low < high <= {spec.levels - 1}, got {spec.gray_range}")


def _sierpinski(size, depth):
    # Cell (i, j) of side size / 2^depth is set iff i & j == 0
    cell = size >> depth
    index = np.arange(size) // cell
    return (index[:, None] & index[None, :]) == 0


def _diamond_average(grid, rows, cols, half):
    """Mean of the in-grid 4-neighbours at distance `half` of grid[rows, cols]."""
    padded = np.pad(grid, half)
    inside = np.pad(np.ones_like(grid), half)
    r = rows[:, None] + half
    c = cols[None, :] + half
    total = padded[r - half, c] + padded[r + half, c] + padded[r, c - half] + padded[r, c + half]
    count = inside[r - half, c] + inside[r + half, c] + inside[r, c - half] + inside[r, c + half]
    return total / count


def midpoint_displacement(size, roughness, rng):
    """
    Diamond-square height field on a (size + 1)^2 grid.
    The displacement amplitude shrinks by 2^-roughness at every level.
    """
    n = size + 1
    grid = np.zeros((n, n))
    grid[::size, ::size] = rng.uniform(-1.0, 1.0, size=(2, 2))

    step = size
    amplitude = 1.0
    while step > 1:
        half = step // 2
        # Square step: centres from the four corners
        corners = (grid[:-1:step, :-1:step] + grid[:-1:step, step::step]
                   + grid[step::step, :-1:step] + grid[step::step, step::step])
        grid[half::step, half::step] = corners / 4.0 + amplitude * rng.uniform(-1.0, 1.0, size=corners.shape)

        # Diamond step: edge midpoints from their in-grid neighbours
        row_mid = np.arange(half, n, step)
        col_all = np.arange(0, n, step)
        mean_a = _diamond_average(grid, row_mid, col_all, half)
        mean_b = _diamond_average(grid, col_all, row_mid, half)
        grid[half::step, ::step] = mean_a + amplitude * rng.uniform(-1.0, 1.0, size=mean_a.shape)
        grid[::step, half::step] = mean_b + amplitude * rng.uniform(-1.0, 1.0, size=mean_b.shape)

        amplitude *= 2.0 ** (-roughness)
        step = half
    return grid[:size, :size]


def _rescale(values):
    span = values.max() - values.min()
    if span == 0:
        return np.zeros_like(values)
    return (values - values.min()) / span


def _rough_field(spec):
    rng = np.random.default_rng(spec.seed)
    field = _rescale(midpoint_displacement(spec.size, spec.roughness, rng))
    if spec.stripe_gain > 0:
        columns = np.arange(spec.size) % spec.stripe_period < spec.stripe_period / 2
        field = _rescale(field + spec.stripe_gain * columns[None, :])
    if spec.skew != 1.0:
        field = field ** spec.skew
    if spec.inverted:
        field = 1.0 - field
    low, high = spec.value_range
    pixels = low + np.floor(field * (high - low) + 0.5).astype(np.int64)
    return GrayImage(pixels, levels=spec.levels)


def generate(spec):
    """
    Render a TextureSpec.

    Returns:
        GrayImage (2 levels for geometric kinds, spec.levels for rough_field)

    Raises:
        InvalidSpec: parameters outside their ranges
    """
    _validate(spec)
    size = spec.size
    y, x = np.indices((size, size))

    if spec.kind == "sierpinski":
        bits = _sierpinski(size, spec.depth)
    elif spec.kind == "filled_rect":
        m = spec.margin
        bits = (x >= m) & (x < size - m) & (y >= m) & (y < size - m)
    elif spec.kind == "hline":
        bits = y == size // 2
    elif spec.kind == "checkerboard":
        bits = (x // spec.period + y // spec.period) % 2 == 0
    elif spec.kind == "stripes":
        bits = x % spec.period < spec.period / 2
    else:
        return _rough_field(spec)
    return GrayImage(bits.astype(np.int64), levels=2)


def image_seed(seed, class_index, image_index):
    """Per-image seed derived from the dataset seed."""
    return int(np.random.SeedSequence([seed, class_index, image_index]).generate_state(1)[0])


def _variants(template):
    if isinstance(template, TextureSpec):
        return (template,)
    variants = tuple(template)
    if not variants:
        raise InvalidSpec("A class needs at least one template")
    return variants


def make_dataset(class_a, class_b, n_per_class=config.SYNTH_PER_CLASS, seed=config.SYNTH_SEED):
    """
    Render n_per_class images per class with derived seeds.
    Class A images are labeled +1, class B images -1.

    Args:
        class_a: TextureSpec, or a sequence of them used in turn by image index
        class_b: Same for class B

    Returns:
        list of SyntheticImage, class A first
    """
    if n_per_class < 2:
        raise InvalidSpec(f"n_per_class must be >= 2, got {n_per_class}")
    dataset = []
    for class_index, (template, label, prefix) in enumerate(((class_a, 1, "a"), (class_b, -1, "b"))):
        variants = _variants(template)
        for i in range(n_per_class):
            spec = replace(variants[i % len(variants)], seed=image_seed(seed, class_index, i))
            dataset.append(SyntheticImage(generate(spec), label, spec, f"{prefix}_{i:03d}.pgm"))
    logger.info("Generated %d synthetic images (%d per class)", len(dataset), n_per_class)
    return dataset


def designed_templates(size=config.SYNTH_IMAGE_SIZE):
    """
    Class templates of the two-class fixture.

    Two signals, each hidden from one feature family:
      - polarity (sparse bright peaks vs sparse dark pits) moves the threshold
        set and the Hoelder exponents, while mirroring gray levels inside
        bin-aligned ranges leaves every GLCM feature unchanged;
      - contrast (full vs half gray range) moves the GLCM features, while
        scaling intensities leaves every Hoelder exponent unchanged.

    Class A has peaks at full contrast. Class B alternates between peaks at
    half contrast and pits at full contrast, so each family alone confuses
    half of class B with class A.

    Returns:
        (class A template, (class B templates...))
    """
    base = TextureSpec(
        kind="rough_field", size=size,
        roughness=config.SYNTH_ROUGHNESS,
        skew=config.SYNTH_SKEW,
        gray_range=config.SYNTH_FULL_CONTRAST_RANGE,
    )
    class_a = base
    class_b = (
        replace(base, gray_range=config.SYNTH_HALF_CONTRAST_RANGE),
        replace(base, inverted=True),
    )
    return class_a, class_b
