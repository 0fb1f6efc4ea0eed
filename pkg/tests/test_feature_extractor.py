import numpy as np
import pytest

from errors import ZeroMeasure
from imaging.gray_image import GrayImage
from processing.feature_extractor import FeatureExtractor
from synthesis.texture_generator import TextureSpec, generate


class TestFeatureExtractor:
    def test_constant_image(self, constant_image):
        result = FeatureExtractor().extract(constant_image)
        np.testing.assert_allclose(result.features.values, [2, 2, 2, 0, 0, 0, 1, 1], atol=0.1)
        assert result.features.contrast == 0.0
        assert result.features.energy == 1.0
        assert result.features.homogeneity == 1.0
        assert not result.features.correlation_defined
        assert result.glcm_ranges is None

    def test_deterministic(self):
        img = generate(TextureSpec("rough_field", 64, roughness=0.4, seed=2))
        extractor = FeatureExtractor()
        assert extractor.extract(img).features == extractor.extract(img).features

    @pytest.mark.parametrize("source", ["threshold", "holder", "contour"])
    def test_fractal_sources(self, source):
        img = generate(TextureSpec("rough_field", 64, roughness=0.5, seed=4))
        result = FeatureExtractor(fractal_source=source).extract(img)
        assert 0.0 <= result.features.fractal_dim <= 2.1

    def test_contour_is_thinner_than_region(self):
        img = generate(TextureSpec("rough_field", 64, roughness=0.8, seed=4))
        region = FeatureExtractor(fractal_source="threshold").extract(img).fractal.dimension
        contour = FeatureExtractor(fractal_source="contour").extract(img).fractal.dimension
        assert contour < region

    def test_ranges_on_request(self):
        img = generate(TextureSpec("stripes", 16, period=4))
        result = FeatureExtractor(with_ranges=True, glcm_levels=2).extract(img)
        low, high = result.glcm_ranges["contrast"]
        assert low == 0.0
        assert high == pytest.approx(1.0)

    def test_unknown_source(self):
        with pytest.raises(ValueError):
            FeatureExtractor(fractal_source="edges")

    def test_black_image(self):
        with pytest.raises(ZeroMeasure):
            FeatureExtractor().extract(GrayImage(np.zeros((16, 16), dtype=int), levels=256))
