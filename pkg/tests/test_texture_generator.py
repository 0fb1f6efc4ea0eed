from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_array_equal

import config
from errors import InvalidSpec
from imaging.gray_image import threshold_binarize
from processing.fractal_analyzer import box_counting_dimension
from processing.glcm_analyzer import averaged_features
from processing.holder_analyzer import holder_image
from synthesis.texture_generator import (
    TextureSpec, designed_templates, generate, image_seed, make_dataset, midpoint_displacement,
)


class TestGenerate:
    def test_sierpinski_depth_three(self):
        img = generate(TextureSpec("sierpinski", 8, depth=3))
        assert img.levels == 2
        assert int(img.pixels.sum()) == 27

    def test_sierpinski_cells_scale_with_size(self):
        small = generate(TextureSpec("sierpinski", 8, depth=3)).pixels
        large = generate(TextureSpec("sierpinski", 32, depth=3)).pixels
        assert_array_equal(large, np.kron(small, np.ones((4, 4), dtype=small.dtype)))

    def test_checkerboard(self):
        img = generate(TextureSpec("checkerboard", 4, period=1))
        assert int(img.pixels.sum()) == 8
        assert_array_equal(img.pixels[0], [1, 0, 1, 0])
        assert_array_equal(img.pixels[1], [0, 1, 0, 1])

    def test_geometric_shapes(self):
        rect = generate(TextureSpec("filled_rect", 16, margin=4)).pixels
        assert int(rect.sum()) == 64
        line = generate(TextureSpec("hline", 16)).pixels
        assert line[8].all() and int(line.sum()) == 16
        stripes = generate(TextureSpec("stripes", 8, period=4)).pixels
        assert_array_equal(stripes[3], [1, 1, 0, 0, 1, 1, 0, 0])

    def test_rough_field_is_deterministic(self):
        spec = TextureSpec("rough_field", 32, roughness=0.4, seed=12)
        assert generate(spec) == generate(spec)
        assert generate(spec) != generate(TextureSpec("rough_field", 32, roughness=0.4, seed=13))

    def test_rough_field_uses_full_range(self):
        img = generate(TextureSpec("rough_field", 64, roughness=0.5, levels=64, seed=3))
        assert img.levels == 64
        assert img.pixels.min() == 0
        assert img.pixels.max() == 63

    def test_stripe_overlay_lifts_columns(self):
        base = TextureSpec("rough_field", 64, roughness=0.8, seed=5)
        plain = generate(base).pixels.astype(float)
        striped = generate(TextureSpec("rough_field", 64, roughness=0.8, seed=5, stripe_gain=1.0)).pixels
        lifted = np.arange(64) % 4 < 2
        gap = striped[:, lifted].mean() - striped[:, ~lifted].mean()
        assert gap > plain[:, lifted].mean() - plain[:, ~lifted].mean() + 50

    def test_skewed_field_maps_onto_gray_range(self):
        img = generate(TextureSpec("rough_field", 32, skew=3.0, gray_range=(64, 255), seed=2))
        assert img.pixels.min() == 64
        assert img.pixels.max() == 255
        # Peaks are sparse: most pixels sit in the lower half of the range
        assert np.median(img.pixels) < (64 + 255) / 2

    def test_inverted_field_mirrors_inside_range(self):
        spec = TextureSpec("rough_field", 32, skew=3.0, gray_range=(64, 255), seed=2)
        plain = generate(spec).pixels
        mirrored = generate(TextureSpec("rough_field", 32, skew=3.0, gray_range=(64, 255), seed=2, inverted=True)).pixels
        assert_array_equal(mirrored, 64 + 255 - plain)

    def test_midpoint_displacement_shape(self):
        grid = midpoint_displacement(16, 0.5, np.random.default_rng(0))
        assert grid.shape == (16, 16)
        assert np.all(np.isfinite(grid))

    @pytest.mark.parametrize("spec", [
        TextureSpec("spiral", 16),
        TextureSpec("sierpinski", 12, depth=2),
        TextureSpec("sierpinski", 4, depth=3),
        TextureSpec("rough_field", 24),
        TextureSpec("rough_field", 16, roughness=1.0),
        TextureSpec("rough_field", 16, levels=300),
        TextureSpec("rough_field", 16, skew=0.0),
        TextureSpec("rough_field", 16, gray_range=(10, 300)),
        TextureSpec("rough_field", 16, gray_range=(100, 100)),
        TextureSpec("filled_rect", 8, margin=4),
        TextureSpec("stripes", 8, period=1),
    ])
    def test_invalid_spec(self, spec):
        with pytest.raises(InvalidSpec):
            generate(spec)


class TestMakeDataset:
    def test_counts_and_labels(self):
        class_a, class_b = designed_templates(size=16)
        dataset = make_dataset(class_a, class_b, n_per_class=20, seed=1)
        assert len(dataset) == 40
        assert sum(1 for item in dataset if item.label == 1) == 20
        assert dataset[0].name == "a_000.pgm"
        assert dataset[-1].name == "b_019.pgm"

    def test_two_per_class(self):
        class_a, class_b = designed_templates(size=16)
        assert len(make_dataset(class_a, class_b, n_per_class=2, seed=1)) == 4

    def test_same_seed_same_dataset(self):
        class_a, class_b = designed_templates(size=16)
        first = make_dataset(class_a, class_b, n_per_class=3, seed=9)
        second = make_dataset(class_a, class_b, n_per_class=3, seed=9)
        assert [item.image for item in first] == [item.image for item in second]

    def test_images_get_distinct_seeds(self):
        seeds = {image_seed(7, c, i) for c in (0, 1) for i in range(20)}
        assert len(seeds) == 40

    def test_too_few_per_class(self):
        with pytest.raises(InvalidSpec):
            make_dataset(*designed_templates(size=16), n_per_class=1)

    def test_class_b_alternates_templates(self):
        class_a, class_b = designed_templates(size=16)
        dataset = make_dataset(class_a, class_b, n_per_class=4, seed=1)
        b_specs = [item.spec for item in dataset if item.label == -1]
        assert [spec.inverted for spec in b_specs] == [False, True, False, True]
        assert b_specs[0].value_range == config.SYNTH_HALF_CONTRAST_RANGE
        assert b_specs[1].value_range == config.SYNTH_FULL_CONTRAST_RANGE
        assert all(item.spec.value_range == config.SYNTH_FULL_CONTRAST_RANGE and not item.spec.inverted
                   for item in dataset if item.label == 1)


class TestDesignedSignals:
    def test_polarity_is_invisible_to_glcm(self):
        class_a, (_, pits) = designed_templates()
        for seed in (3, 11):
            peaks_features = averaged_features(generate(replace(class_a, seed=seed)))
            pits_features = averaged_features(generate(replace(pits, seed=seed)))
            for name, value in peaks_features.as_dict().items():
                assert pits_features.as_dict()[name] == pytest.approx(value, rel=1e-9, abs=1e-12)

    def test_contrast_is_invisible_to_holder_exponents(self):
        class_a, (half_contrast, _) = designed_templates()
        full = holder_image(generate(replace(class_a, seed=5))).alpha
        half = holder_image(generate(replace(half_contrast, seed=5))).alpha
        np.testing.assert_allclose(half, full, atol=0.05)

    def test_polarity_moves_threshold_dimension(self):
        class_a, (_, pits) = designed_templates()
        gaps = []
        for seed in range(5):
            peaks = box_counting_dimension(threshold_binarize(generate(replace(class_a, seed=seed))))
            mirrored = box_counting_dimension(threshold_binarize(generate(replace(pits, seed=seed))))
            gaps.append(mirrored.dimension - peaks.dimension)
        assert np.mean(gaps) > 0
