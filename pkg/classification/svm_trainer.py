"""
Linear soft-margin SVM trained by deterministic full-batch subgradient descent
on the primal hinge-loss objective, plus the plain-text model file format.

The bias is folded in as a constant-1 feature, so training minimizes
    P([w, b]) = 0.5 * ||[w, b]||^2 + C * sum_i max(0, 1 - y_i (w . x_i + b))
with lambda = 1 / (C n), step 1 / (lambda t) and a zero start.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

import config
from errors import DegenerateLabels, ModelFormatError, ShapeError
from .features import FEATURE_NAMES, FeatureMask, FeatureVector, feature_matrix
from .normalizer import Normalizer, fit_normalizer

logger = logging.getLogger(__name__)


class Prediction(NamedTuple):
    label: int
    score: float


@dataclass(frozen=True, eq=False)
class SvmModel:
    """
    Attributes:
        weights: One weight per feature of the mask
        bias: Intercept b
        c_param: Soft-margin constant C used for training
        normalizer: Statistics over all 8 feature dimensions
        mask: FeatureMask the weights apply to
        objective_history: ((iteration, primal objective), ...) recorded in training
    """
    weights: np.ndarray
    bias: float
    c_param: float
    normalizer: Normalizer
    mask: FeatureMask = FeatureMask.COMBINED
    objective_history: tuple = field(default=())

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64).ravel()
        mask = FeatureMask.parse(self.mask)
        if weights.size != len(mask.indices):
            raise ShapeError(
                f"{mask.value} mask needs {len(mask.indices)} weights, got {weights.size}"
            )
        if not self.c_param > 0:
            raise ValueError(f"c_param must be > 0, got {self.c_param}")
        weights.setflags(write=False)
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'mask', mask)
        object.__setattr__(self, 'bias', float(self.bias))
        object.__setattr__(self, 'c_param', float(self.c_param))


def primal_objective(w_aug, Z, c_param):
    """
    Primal objective for the augmented weights.

    Args:
        w_aug: [w, b]
        Z: Rows y_i * [x_i, 1]
    """
    hinge = np.maximum(0.0, 1.0 - Z @ w_aug)
    return float(0.5 * (w_aug @ w_aug) + c_param * hinge.sum())


def train_primal_svm(X, y, c_param=config.SVM_C, iterations=config.SVM_ITERATIONS,
                     objective_every=config.SVM_OBJECTIVE_EVERY):
    """
    Subgradient descent on the primal objective.

    Args:
        X: (n, d) training features
        y: (n,) labels in {+1, -1}
        c_param: Soft-margin constant C > 0
        iterations: Number of full-batch updates
        objective_every: Record the objective every this many iterations

    Returns:
        tuple: (weights (d,), bias, history) where history holds
               (iteration, objective) at iteration 1, every objective_every
               iterations and at the last iteration
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ShapeError(f"Feature matrix {X.shape} does not match {y.shape[0]} labels")
    if not c_param > 0:
        raise ValueError(f"c_param must be > 0, got {c_param}")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if not (np.any(y == 1) and np.any(y == -1)):
        raise DegenerateLabels("Training needs samples of both classes")

    Z = y[:, None] * np.hstack([X, np.ones((X.shape[0], 1))])
    w_aug = np.zeros(Z.shape[1])
    history = []

    for t in range(1, iterations + 1):
        active = (Z @ w_aug < 1.0).astype(np.float64)
        # w <- w - (1 / (lambda t)) * (lambda w - (1/n) sum_active y x)
        w_aug = (1.0 - 1.0 / t) * w_aug + (c_param / t) * (active @ Z)
        if t == 1 or t % objective_every == 0 or t == iterations:
            history.append((t, primal_objective(w_aug, Z, c_param)))

    return w_aug[:-1].copy(), float(w_aug[-1]), tuple(history)


def fit_linear_svm(samples, c_param=config.SVM_C, mask=FeatureMask.COMBINED,
                   iterations=config.SVM_ITERATIONS):
    """
    Train a linear SVM on normalized, masked features.

    Args:
        samples: list of LabeledSample
        c_param: Soft-margin constant C > 0
        mask: FeatureMask selecting the feature family
        iterations: Subgradient iteration budget

    Returns:
        SvmModel

    Raises:
        DegenerateLabels: only one class present
    """
    mask = FeatureMask.parse(mask)
    labels = {s.label for s in samples}
    if len(labels) < 2:
        raise DegenerateLabels(f"Training needs both classes, got labels {sorted(labels)}")

    normalizer = fit_normalizer(samples)
    X = normalizer.transform_samples(samples)[:, list(mask.indices)]
    _, y = feature_matrix(samples)

    weights, bias, history = train_primal_svm(X, y, c_param, iterations)
    model = SvmModel(weights, bias, c_param, normalizer, mask, history)

    accuracy = np.mean([predict(model, s.features).label == s.label for s in samples])
    logger.info(
        "Trained %s SVM on %d samples: %d iterations, objective %.6g, training accuracy %.1f%%",
        mask.value, len(samples), iterations, history[-1][1], 100.0 * accuracy,
    )
    return model


def predict(model, x):
    """
    Classify one feature vector.

    Args:
        model: SvmModel
        x: FeatureVector, or a raw array of 8 values

    Returns:
        Prediction(label, score); a score of exactly 0 is labeled +1

    Raises:
        ShapeError: x does not have 8 features
    """
    if isinstance(x, FeatureVector):
        values, defined = x.values, x.correlation_defined
    else:
        values, defined = np.asarray(x, dtype=np.float64).ravel(), True
        if values.size != len(FEATURE_NAMES):
            raise ShapeError(f"Expected {len(FEATURE_NAMES)} features, got {values.size}")
    normalized = model.normalizer.transform(values, defined)[list(model.mask.indices)]
    score = float(model.weights @ normalized + model.bias)
    return Prediction(1 if score >= 0 else -1, score)


class FeatureWeight(NamedTuple):
    name: str
    weight: float
    importance: float


def feature_importance(model):
    """
    Per-feature weight of a trained model; importance is |w| on the
    normalized scale, so features are comparable with each other.

    Returns:
        list of FeatureWeight in mask order
    """
    names = [FEATURE_NAMES[i] for i in model.mask.indices]
    return [FeatureWeight(name, float(w), float(abs(w))) for name, w in zip(names, model.weights)]


# --- Model file ---

def _format_row(values):
    return ",".join(config.FLOAT_FORMAT % v for v in values)


def format_model(model):
    lines = [
        config.MODEL_HEADER,
        model.mask.value,
        _format_row(model.normalizer.mean),
        _format_row(model.normalizer.std),
        _format_row(model.weights),
        _format_row((model.bias, model.c_param)),
    ]
    return "\n".join(lines) + "\n"


def _parse_row(line, expected, what):
    try:
        values = [float(v) for v in line.split(",")]
    except ValueError:
        raise ModelFormatError(f"Non-numeric {what} row: {line!r}") from None
    if len(values) != expected:
        raise ModelFormatError(f"Expected {expected} {what} values, got {len(values)}")
    if not np.all(np.isfinite(values)):
        raise ModelFormatError(f"Non-finite {what} value in {line!r}")
    return values


def parse_model(text):
    """
    Parse a model file.

    Raises:
        ModelFormatError: wrong header, line count or values
    """
    lines = text.splitlines()
    if len(lines) != 6:
        raise ModelFormatError(f"Model file needs 6 lines, got {len(lines)}")
    if lines[0].strip() != config.MODEL_HEADER:
        raise ModelFormatError(f"Unknown model header {lines[0]!r}")
    try:
        mask = FeatureMask.parse(lines[1].strip())
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from None

    n = len(FEATURE_NAMES)
    mean = _parse_row(lines[2], n, "mean")
    std = _parse_row(lines[3], n, "stddev")
    weights = _parse_row(lines[4], len(mask.indices), "weight")
    bias, c_param = _parse_row(lines[5], 2, "bias/C")
    try:
        return SvmModel(weights, bias, c_param, Normalizer(mean, std), mask)
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from None


def save_model(path, model):
    path = Path(path)
    path.write_text(format_model(model))
    logger.info("Saved %s model to %s", model.mask.value, path)


def load_model(path):
    return parse_model(Path(path).read_text())
