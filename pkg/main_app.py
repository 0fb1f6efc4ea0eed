"""
Command-line entry point of the fractal + GLCM texture classification toolkit.
Runs the pipeline: threshold of the regions of interest, Hoelder image,
texture feature extraction and classifier training/evaluation.

Subcommands: synth, extract, train, predict, evaluate.
"""
import sys
import os

# Add the current directory to Python path so modules can find config
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
import argparse
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Union

import pandas as pd

import config
from classification.features import (
    FeatureMask, read_csv_table, read_features, write_csv_table, write_features,
)
from classification.svm_trainer import feature_importance, load_model, save_model
from errors import ConfigError
from evaluation.ablation import FUSION_MODES, classify, evaluate_ablations, train_models
from evaluation.confusion import format_confusion_table, metrics_frame
from imaging.gray_image import Rect, crop_roi
from imaging.pgm_io import read_pgm, write_pgm
from processing.feature_extractor import FRACTAL_SOURCES, FeatureExtractor
from processing.glcm_analyzer import FEATURE_NAMES as GLCM_FEATURE_NAMES
from synthesis.texture_generator import designed_templates, make_dataset

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s'


@dataclass(frozen=True)
class RunConfig:
    """
    Settings of one run. Defaults come from config.py; every field has a
    kebab-case command-line flag.
    """
    glcm_distance: int = config.GLCM_DISTANCE
    glcm_levels: int = config.GLCM_LEVELS
    box_sizes: Optional[tuple] = None
    holder_windows: tuple = config.HOLDER_WINDOWS
    spectrum_bins: int = config.SPECTRUM_BINS
    svm_c: float = config.SVM_C
    svm_iterations: int = config.SVM_ITERATIONS
    fusion_mode: str = config.FUSION_MODE
    feature_mask: str = config.FEATURE_MASK
    seed: int = config.SEED
    split_fraction: float = config.SPLIT_FRACTION
    fractal_source: str = config.FRACTAL_SOURCE
    threshold: Union[str, int] = config.THRESHOLD_MODE
    paper_eq2: bool = False
    workers: int = config.EXTRACT_WORKERS

    # Fields that never change an output file
    _NOT_RECORDED = ("workers",)

    @classmethod
    def from_args(cls, args):
        values = {f.name: getattr(args, f.name) for f in fields(cls)
                  if getattr(args, f.name, None) is not None}
        return cls(**values)

    def validate(self):
        """
        Check every field against the range of the module that consumes it.

        Raises:
            ConfigError: listing all problems found
        """
        errors = []
        if self.glcm_distance < 1:
            errors.append("glcm-distance must be >= 1")
        if not 2 <= self.glcm_levels <= 256:
            errors.append("glcm-levels must be in [2, 256]")
        if self.box_sizes is not None:
            if any(s < 1 for s in self.box_sizes):
                errors.append("box-sizes must be positive")
            if len(set(self.box_sizes)) < 2:
                errors.append("box-sizes needs at least 2 distinct sizes")
        windows = self.holder_windows
        if len(windows) < 2 or any(w < 1 or w % 2 == 0 for w in windows) \
                or any(b <= a for a, b in zip(windows, windows[1:])):
            errors.append("holder-windows must be >= 2 strictly increasing odd sizes")
        if self.spectrum_bins < 1:
            errors.append("spectrum-bins must be >= 1")
        if not self.svm_c > 0:
            errors.append("svm-c must be > 0")
        if self.svm_iterations < 1:
            errors.append("svm-iterations must be >= 1")
        if self.fusion_mode not in FUSION_MODES:
            errors.append(f"fusion-mode must be one of {FUSION_MODES}")
        if self.feature_mask not in [m.value for m in FeatureMask]:
            errors.append(f"feature-mask must be one of {[m.value for m in FeatureMask]}")
        if not 0 < self.split_fraction < 1:
            errors.append("split-fraction must be in (0, 1)")
        if self.fractal_source not in FRACTAL_SOURCES:
            errors.append(f"fractal-source must be one of {FRACTAL_SOURCES}")
        if isinstance(self.threshold, str) and self.threshold != "auto":
            errors.append("threshold must be 'auto' or an integer")
        elif isinstance(self.threshold, int) and self.threshold < 0:
            errors.append("threshold must be >= 0")
        if self.workers < 1:
            errors.append("workers must be >= 1")

        if errors:
            raise ConfigError("Configuration validation failed: " + "; ".join(errors))
        return self

    def provenance_lines(self):
        """'# key=value' lines heading every CSV output."""
        lines = []
        for f in fields(self):
            if f.name in self._NOT_RECORDED:
                continue
            value = getattr(self, f.name)
            if value is None:
                value = "auto"
            elif isinstance(value, tuple):
                value = " ".join(str(v) for v in value)
            lines.append(f"# {f.name}={value}")
        return lines

    def extractor(self, with_ranges=False):
        return FeatureExtractor(
            glcm_distance=self.glcm_distance,
            glcm_levels=self.glcm_levels,
            box_sizes=self.box_sizes,
            holder_windows=self.holder_windows,
            spectrum_bins=self.spectrum_bins,
            fractal_source=self.fractal_source,
            threshold=self.threshold,
            with_ranges=with_ranges,
        )


# --- synth ---

def cmd_synth(args, run_config):
    """Write the designed two-class dataset as PGM files plus manifest.csv."""
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    class_a, class_b = designed_templates(args.size)
    dataset = make_dataset(class_a, class_b, args.per_class, args.dataset_seed)

    records = []
    for item in dataset:
        write_pgm(out_dir / item.name, item.image)
        records.append({
            "path": item.name, "label": item.label,
            "kind": item.spec.kind, "params": item.spec.params_text(),
        })
    frame = pd.DataFrame.from_records(records, columns=["path", "label", "kind", "params"])
    provenance = [f"# dataset_seed={args.dataset_seed}", f"# per_class={args.per_class}",
                  f"# size={args.size}"]
    write_csv_table(out_dir / "manifest.csv", frame, provenance)
    logger.info("Wrote %d images and manifest to %s", len(dataset), out_dir)
    return 0


# --- extract ---

ROI_COLUMNS = ("x", "y", "w", "h")


def _manifest_roi(path, row_number, values):
    """Rect from the optional x,y,w,h cells of one manifest row; None when all are blank."""
    blank = [pd.isna(v) for v in values]
    if all(blank):
        return None
    if any(blank):
        raise ConfigError(f"{path}: row {row_number} sets only part of x,y,w,h")
    return Rect(*(int(v) for v in values))


def read_manifest(path):
    """
    Manifest columns: path, label and optionally x, y, w, h selecting the
    region of interest of each image (blank cells mean the whole image).

    Returns:
        list of (path as written, resolved Path, label, Rect or None)
    """
    frame = read_csv_table(path)
    if "path" not in frame.columns or "label" not in frame.columns:
        raise ConfigError(f"{path}: manifest needs 'path' and 'label' columns")
    present = [c for c in ROI_COLUMNS if c in frame.columns]
    if present and len(present) != len(ROI_COLUMNS):
        raise ConfigError(f"{path}: region of interest needs all of x,y,w,h, got {present}")

    base = Path(path).parent
    entries = []
    for row_number, record in enumerate(frame.to_dict("records"), start=1):
        path_text = str(record["path"])
        resolved = Path(path_text)
        if not resolved.is_absolute():
            resolved = base / resolved
        roi = _manifest_roi(path, row_number, [record[c] for c in ROI_COLUMNS]) if present else None
        entries.append((path_text, resolved, int(record["label"]), roi))
    return entries


def _write_loglog(dump_dir, index, path_text, estimate):
    name = f"{index:04d}_{Path(path_text).stem}.csv"
    rows = estimate.to_csv_rows()
    (dump_dir / name).write_text("".join(",".join(str(v) for v in row) + "\n" for row in rows))


def _ranges_record(path_text, label, ranges):
    record = {"path": path_text, "label": label}
    for name in GLCM_FEATURE_NAMES:
        low, high = ranges[name] if ranges[name] is not None else (None, None)
        record[f"{name}_min"] = low
        record[f"{name}_max"] = high
    return record


def cmd_extract(args, run_config):
    """
    One features row per manifest entry, in manifest order, computed on the
    entry's region of interest when the manifest gives one.
    Files that fail are logged and skipped; the exit code is then 1.
    """
    entries = read_manifest(args.manifest)
    extractor = run_config.extractor(with_ranges=args.glcm_ranges is not None)

    def work(entry):
        _, resolved, _, roi = entry
        try:
            img = read_pgm(resolved)
            if roi is not None:
                img = crop_roi(img, roi)
            return extractor.extract(img), None
        except (ValueError, OSError) as exc:
            return None, exc

    with ThreadPoolExecutor(max_workers=run_config.workers) as pool:
        outcomes = list(pool.map(work, entries))

    dump_dir = Path(args.loglog_dump) if args.loglog_dump else None
    if dump_dir is not None:
        dump_dir.mkdir(parents=True, exist_ok=True)

    rows, range_records, failures = [], [], 0
    for index, ((path_text, _, label, _), (result, error)) in enumerate(zip(entries, outcomes)):
        if error is not None:
            failures += 1
            logger.error("%s: %s", path_text, error)
            continue
        rows.append((path_text, label, result.features))
        if dump_dir is not None:
            _write_loglog(dump_dir, index, path_text, result.fractal)
        if result.glcm_ranges is not None:
            range_records.append(_ranges_record(path_text, label, result.glcm_ranges))

    write_features(args.out, rows, run_config.provenance_lines())
    if args.glcm_ranges:
        columns = ["path", "label"] + [f"{n}_{end}" for n in GLCM_FEATURE_NAMES for end in ("min", "max")]
        write_csv_table(args.glcm_ranges, pd.DataFrame.from_records(range_records, columns=columns),
                        run_config.provenance_lines())

    logger.info("Extracted features of %d/%d images", len(rows), len(entries))
    if failures:
        logger.error("%d file(s) failed", failures)
        return 1
    return 0


# --- train / predict ---

def family_model_path(path, family):
    """model.txt -> model.fractal.txt"""
    path = Path(path)
    return path.with_name(f"{path.stem}.{family}{path.suffix}")


def _importance_frame(models):
    records = []
    for family, model in models.items():
        for item in feature_importance(model):
            records.append({"model": family, "feature": item.name,
                            "weight": item.weight, "importance": item.importance})
    return pd.DataFrame.from_records(records, columns=["model", "feature", "weight", "importance"])


def cmd_train(args, run_config):
    samples = read_features(args.features)
    models = train_models(samples, run_config.fusion_mode, run_config.feature_mask,
                          run_config.svm_c, run_config.svm_iterations)
    if run_config.fusion_mode == "early":
        save_model(args.model_out, next(iter(models.values())))
    else:
        for family, model in models.items():
            save_model(family_model_path(args.model_out, family), model)

    if args.importance:
        frame = _importance_frame(models)
        write_csv_table(args.importance, frame, run_config.provenance_lines())
        top = frame.loc[frame["importance"].idxmax()]
        logger.info("Largest |w|: %s (%s model, %.4g)", top["feature"], top["model"], top["importance"])
    return 0


def cmd_predict(args, run_config):
    samples = read_features(args.features)
    models = {str(i): load_model(path) for i, path in enumerate(args.model)}
    score_column = "score" if len(models) == 1 else "confidence"

    records = []
    for sample in samples:
        label, score = classify(models, sample.features)
        records.append({"path": sample.name, "label": sample.label,
                        "predicted": label, score_column: score})
    frame = pd.DataFrame.from_records(records, columns=["path", "label", "predicted", score_column])
    write_csv_table(args.out, frame, run_config.provenance_lines())
    logger.info("Wrote %d predictions to %s", len(records), args.out)
    return 0


# --- evaluate ---

def _percent_text(value):
    return "n/a" if value is None else config.PERCENT_FORMAT % value + "%"


def cmd_evaluate(args, run_config):
    """Holdout ablation: metrics CSV to --out, confusion tables to stdout."""
    samples = read_features(args.features)
    results = evaluate_ablations(
        samples,
        fusion_mode=run_config.fusion_mode,
        c_param=run_config.svm_c,
        iterations=run_config.svm_iterations,
        split_fraction=run_config.split_fraction,
        seed=run_config.seed,
        paper_eq2=run_config.paper_eq2,
    )
    frame = metrics_frame([(r.method, r.metrics) for r in results], paper_eq2=run_config.paper_eq2)
    write_csv_table(args.out, frame, run_config.provenance_lines())

    for result in results:
        print(format_confusion_table(result.confusion, title=result.method))
        m = result.metrics
        line = (f"{result.method}: {_percent_text(m.ccr)} (sensitivity, {_percent_text(m.sensitivity)}; "
                f"specificity, {_percent_text(m.specificity)})")
        if run_config.paper_eq2:
            line += f" [TN/(TN+FN) specificity {_percent_text(m.specificity_paper)}]"
        print(line)
        print()
    return 0


# --- argument parsing ---

def _int_list(text):
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _threshold(text):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or an integer, got {text!r}") from None


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("run configuration")
    group.add_argument('--glcm-distance', type=int, help=f"GLCM offset in pixels (default {config.GLCM_DISTANCE})")
    group.add_argument('--glcm-levels', type=int, help=f"GLCM gray levels (default {config.GLCM_LEVELS})")
    group.add_argument('--box-sizes', type=_int_list, help="Comma-separated box sides (default powers of two)")
    group.add_argument('--holder-windows', type=_int_list, help="Comma-separated odd window sides (default 3,5,7,9)")
    group.add_argument('--spectrum-bins', type=int, help=f"Alpha bins (default {config.SPECTRUM_BINS})")
    group.add_argument('--svm-c', type=float, help=f"Soft-margin constant (default {config.SVM_C})")
    group.add_argument('--svm-iterations', type=int, help=f"Training iterations (default {config.SVM_ITERATIONS})")
    group.add_argument('--fusion-mode', choices=FUSION_MODES, help="early: one SVM; vote: one SVM per family")
    group.add_argument('--feature-mask', choices=[m.value for m in FeatureMask], help="Feature family for early fusion")
    group.add_argument('--seed', type=int, help=f"Split seed (default {config.SEED})")
    group.add_argument('--split-fraction', type=float, help=f"Train share per class (default {config.SPLIT_FRACTION})")
    group.add_argument('--fractal-source', choices=FRACTAL_SOURCES, help="Binary support of the box dimension")
    group.add_argument('--threshold', type=_threshold, help="'auto' (Otsu) or an integer intensity")
    group.add_argument('--paper-eq2', action='store_true', default=None,
                       help="Also report specificity as TN/(TN+FN)")
    group.add_argument('--workers', type=int, help="Extraction threads")
    group.add_argument('--verbose', '-v', action='store_true', help="Debug logging")
    group.add_argument('--log-file', help="Write the log to this file instead of stderr")
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="main_app.py",
        description="Fractal and co-occurrence texture features with a linear SVM classifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser('synth', parents=[common], help="Write the synthetic two-class dataset")
    synth.add_argument('--out-dir', required=True)
    synth.add_argument('--per-class', type=int, default=config.SYNTH_PER_CLASS)
    synth.add_argument('--size', type=int, default=config.SYNTH_IMAGE_SIZE)
    synth.add_argument('--dataset-seed', type=int, default=config.SYNTH_SEED)
    synth.set_defaults(handler=cmd_synth)

    extract = sub.add_parser('extract', parents=[common], help="Features CSV from a manifest of PGM images")
    extract.add_argument('--manifest', required=True, help="CSV with path,label columns and optional x,y,w,h region of interest")
    extract.add_argument('--out', required=True)
    extract.add_argument('--loglog-dump', metavar='DIR', help="Write box-counting points per image")
    extract.add_argument('--glcm-ranges', metavar='PATH', help="Write per-direction GLCM feature ranges")
    extract.set_defaults(handler=cmd_extract)

    train = sub.add_parser('train', parents=[common], help="Train SVM model file(s)")
    train.add_argument('--features', required=True)
    train.add_argument('--model-out', required=True)
    train.add_argument('--importance', metavar='PATH', help="Write |w| per feature as a CSV")
    train.set_defaults(handler=cmd_train)

    predict = sub.add_parser('predict', parents=[common], help="Apply model file(s) to a features CSV")
    predict.add_argument('--features', required=True)
    predict.add_argument('--model', required=True, nargs='+')
    predict.add_argument('--out', required=True)
    predict.set_defaults(handler=cmd_predict)

    evaluate = sub.add_parser('evaluate', parents=[common], help="Holdout fractal/GLCM/combined ablation")
    evaluate.add_argument('--features', required=True)
    evaluate.add_argument('--out', required=True, help="Metrics CSV")
    evaluate.set_defaults(handler=cmd_evaluate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        filename=args.log_file,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
    )

    try:
        run_config = RunConfig.from_args(args).validate()
        return args.handler(args, run_config)
    except (ValueError, OSError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
