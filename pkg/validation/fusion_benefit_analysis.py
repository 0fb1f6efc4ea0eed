"""
FUSION BENEFIT ANALYSIS
Fractal-only, GLCM-only and combined classifiers on the designed synthetic
dataset, over several split seeds, as a sensitivity / specificity / CCR comparison.
"""
import os
import statistics
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from classification.features import LabeledSample
from evaluation.ablation import evaluate_ablations
from processing.feature_extractor import FeatureExtractor
from synthesis.texture_generator import designed_templates, make_dataset

SPLIT_SEEDS = [1, 2, 3, 4, 5]
ITERATIONS = 20000


def calculate_stats(values):
    """Mean, std, min, max of the defined values"""
    clean_values = [v for v in values if v is not None]
    if not clean_values:
        return None, None, None, None
    std = statistics.stdev(clean_values) if len(clean_values) > 1 else 0.0
    return statistics.mean(clean_values), std, min(clean_values), max(clean_values)


def build_samples():
    extractor = FeatureExtractor()
    dataset = make_dataset(*designed_templates())
    return [LabeledSample(extractor.extract(item.image).features, item.label, item.name)
            for item in dataset]


def print_analysis(fusion_mode="early"):
    print("=" * 80)
    print("FUSION BENEFIT ANALYSIS")
    print(f"Designed dataset: {config.SYNTH_PER_CLASS} images per class, "
          f"{config.SYNTH_IMAGE_SIZE}x{config.SYNTH_IMAGE_SIZE}, fusion mode '{fusion_mode}'")
    print("=" * 80)

    samples = build_samples()
    per_method = {}
    for seed in SPLIT_SEEDS:
        for result in evaluate_ablations(samples, fusion_mode=fusion_mode, iterations=ITERATIONS, seed=seed):
            per_method.setdefault(result.method, []).append(result.metrics)

    print(f"\n{'Method':<10} {'Sensitivity':>12} {'Specificity':>12} {'CCR':>8} {'CCR range':>16}")
    print("-" * 62)
    mean_ccr = {}
    for method, results in per_method.items():
        sens = calculate_stats([m.sensitivity for m in results])[0]
        spec = calculate_stats([m.specificity for m in results])[0]
        ccr_mean, _, ccr_min, ccr_max = calculate_stats([m.ccr for m in results])
        mean_ccr[method] = ccr_mean
        print(f"{method:<10} {sens:>11.2f}% {spec:>11.2f}% {ccr_mean:>7.2f}% "
              f"  [{ccr_min:.1f}, {ccr_max:.1f}]")

    best_single = max(mean_ccr["fractal"], mean_ccr["glcm"])
    print()
    if mean_ccr["combined"] >= best_single:
        print(f"✓ Combined features match or beat the best single family "
              f"({mean_ccr['combined']:.2f}% vs {best_single:.2f}%)")
    else:
        print(f"⚠ Combined features trail the best single family "
              f"({mean_ccr['combined']:.2f}% vs {best_single:.2f}%)")
    return mean_ccr


if __name__ == "__main__":
    mode = sys.argv[1] if len(sys.argv) > 1 else "early"
    print_analysis(mode)
