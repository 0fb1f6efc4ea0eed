import pytest

from classification.features import FeatureMask
from evaluation.ablation import classify, evaluate_ablations, train_models


class TestTrainModels:
    def test_early_fusion_single_model(self, blob_samples):
        models = train_models(blob_samples, "early", "combined", iterations=500)
        assert list(models) == ["combined"]
        assert models["combined"].weights.shape == (8,)

    def test_vote_fusion_one_model_per_family(self, blob_samples):
        models = train_models(blob_samples, "vote", iterations=500)
        assert list(models) == ["fractal", "glcm"]
        assert models["fractal"].mask is FeatureMask.FRACTAL

    def test_unknown_mode(self, blob_samples):
        with pytest.raises(ValueError):
            train_models(blob_samples, "late")

    def test_classify_uses_vote_confidence(self, blob_samples):
        models = train_models(blob_samples, "vote", iterations=500)
        label, confidence = classify(models, blob_samples[0].features)
        assert label in (1, -1)
        assert confidence >= 0


class TestEvaluateAblations:
    def test_separable_blobs(self, blob_samples):
        results = evaluate_ablations(blob_samples, iterations=2000, seed=3)
        assert [r.method for r in results] == ["fractal", "glcm", "combined"]
        for result in (results[0], results[2]):
            m = result.metrics
            assert (m.sensitivity, m.specificity, m.ccr) == (100.0, 100.0, 100.0)
            assert result.confusion.total == 20

    def test_same_seed_same_report(self, blob_samples):
        first = evaluate_ablations(blob_samples, iterations=500, seed=8)
        second = evaluate_ablations(blob_samples, iterations=500, seed=8)
        assert [r.predictions for r in first] == [r.predictions for r in second]
