"""
Holdout evaluation of the three feature families: fractal only, GLCM only
and their combination (early fusion or vote).
"""
import logging
from dataclasses import dataclass

import config
from classification.features import FeatureMask
from classification.svm_trainer import fit_linear_svm, predict
from classification.vote_fusion import vote_fusion
from .confusion import confusion, metrics
from .splitter import split

logger = logging.getLogger(__name__)

FUSION_MODES = ("early", "vote")


@dataclass(frozen=True)
class AblationResult:
    method: str
    confusion: object
    metrics: object
    predictions: tuple


def train_models(samples, fusion_mode=config.FUSION_MODE, mask=FeatureMask.COMBINED,
                 c_param=config.SVM_C, iterations=config.SVM_ITERATIONS):
    """
    Models for one classifier configuration.

    Early fusion trains a single SVM on `mask`; vote fusion trains one SVM per
    feature family.

    Returns:
        dict: {family name: SvmModel}
    """
    if fusion_mode == "early":
        mask = FeatureMask.parse(mask)
        return {mask.value: fit_linear_svm(samples, c_param, mask, iterations)}
    if fusion_mode == "vote":
        return {
            family.value: fit_linear_svm(samples, c_param, family, iterations)
            for family in (FeatureMask.FRACTAL, FeatureMask.GLCM)
        }
    raise ValueError(f"Unknown fusion mode {fusion_mode!r}, expected one of {FUSION_MODES}")


def classify(models, x):
    """
    Label one FeatureVector with a set of models.

    Returns:
        tuple: (label, score); several models are combined by vote_fusion and
               the score is the vote confidence
    """
    decisions = [predict(model, x) for model in models.values()]
    if len(decisions) == 1:
        return decisions[0].label, decisions[0].score
    fused = vote_fusion(decisions)
    return fused.label, fused.confidence


def evaluate_ablations(samples, fusion_mode=config.FUSION_MODE, c_param=config.SVM_C,
                       iterations=config.SVM_ITERATIONS, split_fraction=config.SPLIT_FRACTION,
                       seed=config.SEED, paper_eq2=False):
    """
    Split once, then train and test fractal, glcm and combined classifiers.

    Returns:
        list of AblationResult in the order fractal, glcm, combined
    """
    train, test = split(samples, split_fraction, seed)
    truth = [s.label for s in test]

    configurations = (
        ("fractal", "early", FeatureMask.FRACTAL),
        ("glcm", "early", FeatureMask.GLCM),
        ("combined", fusion_mode, FeatureMask.COMBINED),
    )
    results = []
    for method, mode, mask in configurations:
        models = train_models(train, mode, mask, c_param, iterations)
        predictions = tuple(classify(models, s.features)[0] for s in test)
        cm = confusion(truth, predictions)
        result = metrics(cm, paper_eq2=paper_eq2)
        logger.info(
            "%s: sensitivity %s, specificity %s, ccr %s",
            method, result.sensitivity, result.specificity, result.ccr,
        )
        results.append(AblationResult(method, cm, result, predictions))
    return results
