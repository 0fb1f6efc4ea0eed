import numpy as np
import pytest

from classification.features import (
    FEATURE_NAMES, FeatureMask, FeatureVector, LabeledSample, fuse_features, read_features, write_features,
)
from errors import InvalidLabel, ShapeError
from imaging.gray_image import threshold_binarize
from processing.fractal_analyzer import box_counting_dimension
from processing.glcm_analyzer import GlcmFeatures, averaged_features
from processing.holder_analyzer import MultifractalSpectrum, holder_image, multifractal_spectrum


class TestFuseFeatures:
    def test_constant_image_assembly(self, constant_image):
        fractal = box_counting_dimension(threshold_binarize(constant_image))
        spectrum = multifractal_spectrum(holder_image(constant_image))
        glcm = averaged_features(constant_image)
        vector = fuse_features(fractal, spectrum, glcm)
        np.testing.assert_allclose(vector.values, [2.0, 2.0, 2.0, 0.0, 0.0, 0.0, 1.0, 1.0], atol=1e-9)
        assert not vector.correlation_defined

    def test_undefined_correlation_becomes_zero(self, constant_image):
        fractal = box_counting_dimension(threshold_binarize(constant_image))
        spectrum = MultifractalSpectrum(((1.5, 1.2), (2.0, 1.9)), 0.5)
        glcm = GlcmFeatures(contrast=0.3, correlation=None, energy=0.4, homogeneity=0.8)
        vector = fuse_features(fractal, spectrum, glcm)
        assert vector.correlation == 0.0
        assert vector.values.shape == (8,)
        assert vector.alpha_peak == 2.0
        assert vector.spectrum_width == pytest.approx(0.5)


class TestFeatureVector:
    def test_arity(self):
        with pytest.raises(ShapeError):
            FeatureVector(np.zeros(7))

    def test_non_finite_rejected(self):
        values = np.zeros(8)
        values[2] = np.nan
        with pytest.raises(ValueError):
            FeatureVector(values)

    def test_named_slots(self):
        vector = FeatureVector(np.arange(8.0))
        assert [getattr(vector, name) for name in FEATURE_NAMES] == list(range(8))

    def test_masks(self):
        assert FeatureMask.FRACTAL.indices == (0, 1, 2, 3)
        assert FeatureMask.GLCM.indices == (4, 5, 6, 7)
        assert FeatureMask.COMBINED.indices == tuple(range(8))
        assert FeatureMask.parse("glcm") is FeatureMask.GLCM
        np.testing.assert_array_equal(FeatureVector(np.arange(8.0)).masked("glcm"), [4, 5, 6, 7])

    def test_label_domain(self):
        with pytest.raises(InvalidLabel):
            LabeledSample(FeatureVector(np.zeros(8)), 0)


class TestFeaturesCsv:
    def test_round_trip_is_exact(self, tmp_path):
        rng = np.random.default_rng(17)
        rows = [
            ("a.pgm", 1, FeatureVector(rng.normal(size=8))),
            ("b.pgm", -1, FeatureVector(rng.normal(size=8), correlation_defined=False)),
        ]
        path = tmp_path / "features.csv"
        write_features(path, rows, ["# seed=1"])
        samples = read_features(path)
        assert [s.name for s in samples] == ["a.pgm", "b.pgm"]
        assert [s.label for s in samples] == [1, -1]
        for sample, (_, _, vector) in zip(samples, rows):
            assert sample.features == vector

    def test_undefined_correlation_is_empty_cell(self, tmp_path):
        path = tmp_path / "features.csv"
        write_features(path, [("c.pgm", 1, FeatureVector(np.ones(8), correlation_defined=False))])
        lines = path.read_text().splitlines()
        assert lines[0] == "path,label," + ",".join(FEATURE_NAMES)
        assert lines[1] == "c.pgm,1,1,1,1,1,1,,1,1"

    def test_missing_column(self, tmp_path):
        path = tmp_path / "broken.csv"
        path.write_text("path,label,fractal_dim\nx.pgm,1,2.0\n")
        with pytest.raises(ShapeError):
            read_features(path)
