import numpy as np
import pytest
from scipy import optimize

from classification.features import FeatureMask, FeatureVector, LabeledSample, feature_matrix
from classification.normalizer import Normalizer
from classification.svm_trainer import (
    SvmModel, feature_importance, fit_linear_svm, format_model, load_model, parse_model, predict, primal_objective, save_model,
    train_primal_svm,
)
from errors import DegenerateLabels, ModelFormatError, ShapeError


def _point(x, y, label):
    values = np.zeros(8)
    values[0], values[1] = x, y
    return LabeledSample(FeatureVector(values), label)


def _reference_objective(X, y, c_param):
    """Exact soft-margin optimum from the box-constrained dual, bias folded into the weights."""
    Z = y[:, None] * np.hstack([X, np.ones((X.shape[0], 1))])
    Q = Z @ Z.T

    def negative_dual(alpha):
        return 0.5 * alpha @ Q @ alpha - alpha.sum(), Q @ alpha - 1.0

    result = optimize.minimize(
        negative_dual, np.zeros(len(y)), jac=True, method="L-BFGS-B",
        bounds=[(0.0, c_param)] * len(y), options={"maxiter": 10000, "ftol": 1e-15, "gtol": 1e-12},
    )
    w_ref = Z.T @ result.x
    return primal_objective(w_ref, Z, c_param), -result.fun, Z


class TestTrainPrimalSvm:
    def test_symmetric_pair(self):
        samples = [_point(2.0, 0.0, 1), _point(-2.0, 0.0, -1)]
        model = fit_linear_svm(samples, c_param=1.0, iterations=2000)
        assert predict(model, samples[0].features).label == 1
        assert predict(model, samples[1].features).label == -1
        assert model.weights[0] > 0
        assert np.all(np.abs(model.weights[1:]) <= 1e-12)

    def test_xor_is_not_separable(self):
        samples = [_point(1, 1, 1), _point(-1, -1, 1), _point(1, -1, -1), _point(-1, 1, -1)]
        model = fit_linear_svm(samples, iterations=2000)
        accuracy = np.mean([predict(model, s.features).label == s.label for s in samples])
        assert accuracy <= 0.75

    def test_blobs_are_separated(self, blob_samples):
        model = fit_linear_svm(blob_samples, iterations=5000)
        assert all(predict(model, s.features).label == s.label for s in blob_samples)

    def test_matches_exact_solver_on_blobs(self, blob_samples):
        c_param = 10.0
        model = fit_linear_svm(blob_samples, c_param=c_param)
        X = model.normalizer.transform_samples(blob_samples)
        _, y = feature_matrix(blob_samples)

        margins = y * (X @ model.weights + model.bias)
        assert np.all(margins >= 1 - 1e-3)

        reference, dual, Z = _reference_objective(X, y, c_param)
        objective = primal_objective(np.append(model.weights, model.bias), Z, c_param)
        assert objective == pytest.approx(model.objective_history[-1][1], rel=1e-12)
        assert dual <= reference + 1e-6
        assert objective <= 1.01 * reference
        assert objective >= dual - 1e-6

    def test_deterministic(self, blob_samples):
        first = fit_linear_svm(blob_samples, iterations=3000)
        second = fit_linear_svm(blob_samples, iterations=3000)
        assert format_model(first) == format_model(second)
        np.testing.assert_array_equal(first.weights, second.weights)

    def test_objective_history(self, blob_dataset):
        X, y = blob_dataset
        _, _, history = train_primal_svm(X, y, c_param=10.0, iterations=2500, objective_every=1000)
        assert [t for t, _ in history] == [1, 1000, 2000, 2500]
        assert history[-1][1] <= history[0][1]

    def test_single_class(self):
        with pytest.raises(DegenerateLabels):
            fit_linear_svm([_point(1, 0, 1), _point(2, 0, 1)])

    def test_invalid_c(self, blob_dataset):
        with pytest.raises(ValueError):
            train_primal_svm(*blob_dataset, c_param=0.0)

    def test_fractal_mask_ignores_glcm_slots(self, blob_samples):
        model = fit_linear_svm(blob_samples, mask=FeatureMask.FRACTAL, iterations=2000)
        assert model.weights.shape == (4,)
        rng = np.random.default_rng(1)
        for sample in blob_samples[:5]:
            perturbed = sample.features.values.copy()
            perturbed[4:] += rng.normal(size=4) * 100
            assert predict(model, perturbed) == predict(model, sample.features)


def _unit_model(**kwargs):
    weights = np.zeros(8)
    weights[0] = 1.0
    return SvmModel(weights, 0.0, 1.0, Normalizer.identity(), **kwargs)


class TestPredict:
    def test_direct_evaluation(self):
        values = np.zeros(8)
        values[0] = 2.0
        assert tuple(predict(_unit_model(), values)) == (1, 2.0)
        assert tuple(predict(_unit_model(), -values)) == (-1, -2.0)

    def test_zero_score_is_positive(self):
        assert tuple(predict(_unit_model(), np.zeros(8))) == (1, 0.0)

    def test_arity(self):
        with pytest.raises(ShapeError):
            predict(_unit_model(), np.zeros(7))

    def test_positive_rescaling(self, blob_samples):
        model = fit_linear_svm(blob_samples, iterations=2000)
        scaled = SvmModel(model.weights * 3.5, model.bias * 3.5, model.c_param, model.normalizer, model.mask)
        for sample in blob_samples:
            assert predict(scaled, sample.features).label == predict(model, sample.features).label


class TestFeatureImportance:
    def test_absolute_weights_in_mask_order(self):
        weights = np.array([0.5, -2.0, 0.0, 1.5])
        model = SvmModel(weights, 0.1, 1.0, Normalizer.identity(), FeatureMask.GLCM)
        report = feature_importance(model)
        assert [item.name for item in report] == ["contrast", "correlation", "energy", "homogeneity"]
        assert [item.weight for item in report] == [0.5, -2.0, 0.0, 1.5]
        assert [item.importance for item in report] == [0.5, 2.0, 0.0, 1.5]

    def test_constant_slots_get_zero_importance(self, blob_samples):
        model = fit_linear_svm(blob_samples, iterations=2000)
        report = feature_importance(model)
        assert len(report) == 8
        # Only the first two slots vary in the blob samples
        assert all(item.importance > 0 for item in report[:2])
        assert all(item.importance == 0 for item in report[2:])


class TestModelFile:
    def test_save_and_load_exact(self, tmp_path, blob_samples):
        model = fit_linear_svm(blob_samples, mask="glcm", iterations=1000)
        path = tmp_path / "model.txt"
        save_model(path, model)
        loaded = load_model(path)
        assert loaded.mask is FeatureMask.GLCM
        np.testing.assert_array_equal(loaded.weights, model.weights)
        np.testing.assert_array_equal(loaded.normalizer.mean, model.normalizer.mean)
        np.testing.assert_array_equal(loaded.normalizer.std, model.normalizer.std)
        assert (loaded.bias, loaded.c_param) == (model.bias, model.c_param)
        assert format_model(loaded) == path.read_text()

    def test_layout(self):
        lines = format_model(_unit_model()).splitlines()
        assert lines[0] == "texfrac-svm v1"
        assert lines[1] == "combined"
        assert lines[4] == "1,0,0,0,0,0,0,0"
        assert lines[5] == "0,1"

    @pytest.mark.parametrize("text", [
        "",
        "other-header\ncombined\n0,0,0,0,0,0,0,0\n1,1,1,1,1,1,1,1\n1,0,0,0,0,0,0,0\n0,1\n",
        "texfrac-svm v1\nnothing\n0,0,0,0,0,0,0,0\n1,1,1,1,1,1,1,1\n1,0,0,0,0,0,0,0\n0,1\n",
        "texfrac-svm v1\nfractal\n0,0,0,0,0,0,0,0\n1,1,1,1,1,1,1,1\n1,0,0,0,0,0,0,0\n0,1\n",
        "texfrac-svm v1\ncombined\n0,0,0,0,0,0,0,0\n1,1,1,1,1,1,1,x\n1,0,0,0,0,0,0,0\n0,1\n",
        "texfrac-svm v1\ncombined\n0,0,0,0,0,0,0,0\n1,1,1,1,1,1,1,0\n1,0,0,0,0,0,0,0\n0,1\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(ModelFormatError):
            parse_model(text)
