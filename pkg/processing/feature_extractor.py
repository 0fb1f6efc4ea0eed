"""
Per-image feature extraction: threshold of the region of interest, Hoelder
image and spectrum, GLCM features, then fusion into one FeatureVector.

FeatureExtractor is a facade over the specialized analyzers and keeps their
parameters in one place.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import config
from classification.features import fuse_features
from imaging.gray_image import BinaryImage, boundary, threshold_binarize
from .fractal_analyzer import box_counting_dimension
from .glcm_analyzer import averaged_features, directional_feature_ranges
from .holder_analyzer import holder_image, multifractal_spectrum

logger = logging.getLogger(__name__)

FRACTAL_SOURCES = ("threshold", "holder", "contour")


@dataclass(frozen=True)
class ExtractionResult:
    features: object
    fractal: object
    spectrum: object
    glcm: object
    glcm_ranges: Optional[dict] = None


class FeatureExtractor:
    """
    Turns a GrayImage region of interest into a fused FeatureVector.
    """

    def __init__(self, glcm_distance=config.GLCM_DISTANCE, glcm_levels=config.GLCM_LEVELS,
                 box_sizes=None, holder_windows=config.HOLDER_WINDOWS,
                 spectrum_bins=config.SPECTRUM_BINS, fractal_source=config.FRACTAL_SOURCE,
                 threshold=config.THRESHOLD_MODE, with_ranges=False):
        """
        Args:
            glcm_distance: GLCM offset length in pixels
            glcm_levels: Gray levels the GLCM is computed on
            box_sizes: Box sides for every box-counting fit (None = powers of two)
            holder_windows: Odd window sides of the Hoelder measure
            spectrum_bins: Number of alpha bins
            fractal_source: Binary support of the box dimension
                (threshold, holder or contour)
            threshold: "auto" (Otsu) or an integer intensity
            with_ranges: Also compute per-direction GLCM feature ranges
        """
        if fractal_source not in FRACTAL_SOURCES:
            raise ValueError(f"Unknown fractal source {fractal_source!r}, expected one of {FRACTAL_SOURCES}")
        self.glcm_distance = glcm_distance
        self.glcm_levels = glcm_levels
        self.box_sizes = box_sizes
        self.holder_windows = tuple(holder_windows)
        self.spectrum_bins = spectrum_bins
        self.fractal_source = fractal_source
        self.threshold = threshold
        self.with_ranges = with_ranges

    def fractal_support(self, img, holder):
        """Binary image whose box-counting dimension becomes the fractal_dim feature."""
        if self.fractal_source == "holder":
            return BinaryImage(holder.finite_mask)
        binary = threshold_binarize(img, self.threshold)
        if self.fractal_source == "contour":
            return boundary(binary)
        return binary

    def extract(self, img):
        """
        Run the full pipeline on one image.

        Returns:
            ExtractionResult

        Raises:
            TextureAnalysisError subclasses from the individual stages
        """
        holder = holder_image(img, self.holder_windows)
        fractal = box_counting_dimension(self.fractal_support(img, holder), self.box_sizes)
        spectrum = multifractal_spectrum(holder, self.spectrum_bins, self.box_sizes)

        glcm = averaged_features(img, self.glcm_distance, self.glcm_levels)
        if glcm.correlation is None:
            logger.debug("GLCM correlation undefined, stored as 0")
        ranges = None
        if self.with_ranges:
            ranges = directional_feature_ranges(img, self.glcm_distance, self.glcm_levels)

        return ExtractionResult(
            features=fuse_features(fractal, spectrum, glcm),
            fractal=fractal,
            spectrum=spectrum,
            glcm=glcm,
            glcm_ranges=ranges,
        )
