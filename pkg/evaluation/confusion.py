"""
Confusion matrix and the sensitivity / specificity / correct classification
rate (CCR) metrics, all in percent. Normal (+1) is the positive class.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

import config
from errors import EmptyMatrix, ShapeError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fn, self.fp, self.tn) < 0:
            raise ValueError(f"Confusion counts must be >= 0, got {self}")

    @property
    def total(self):
        return self.tp + self.fn + self.fp + self.tn

    def row_percent(self):
        """
        Each true-class row as percentages of that row.
        A row without samples is all None.
        """
        rows = []
        for hit, miss in ((self.tp, self.fn), (self.fp, self.tn)):
            count = hit + miss
            if count == 0:
                rows.append((None, None))
            else:
                rows.append(((100.0 * hit) / count, (100.0 * miss) / count))
        return tuple(rows)


@dataclass(frozen=True)
class Metrics:
    """Percentages; None where the denominator is zero."""
    sensitivity: Optional[float]
    specificity: Optional[float]
    ccr: Optional[float]
    specificity_paper: Optional[float] = None


def confusion(true_labels, predicted):
    """
    Tabulate predictions against ground truth.

    Raises:
        ShapeError: the two lists differ in length
    """
    true_labels = np.asarray(list(true_labels))
    predicted = np.asarray(list(predicted))
    if true_labels.shape != predicted.shape:
        raise ShapeError(
            f"{true_labels.size} true labels but {predicted.size} predictions"
        )
    bad = set(np.unique(np.concatenate([true_labels, predicted])).tolist()) - {1, -1}
    if bad:
        raise ValueError(f"Labels must be +1 or -1, got {sorted(bad)}")

    positive = true_labels == 1
    predicted_positive = predicted == 1
    return ConfusionMatrix(
        tp=int(np.sum(positive & predicted_positive)),
        fn=int(np.sum(positive & ~predicted_positive)),
        fp=int(np.sum(~positive & predicted_positive)),
        tn=int(np.sum(~positive & ~predicted_positive)),
    )


def _percent(numerator, denominator):
    if denominator == 0:
        return None
    return (100.0 * numerator) / denominator


def metrics(cm, paper_eq2=False):
    """
    Sensitivity = 100 TP/(TP+FN), specificity = 100 TN/(TN+FP),
    CCR = 100 (TP+TN)/T.

    With paper_eq2 the alternative 100 TN/(TN+FN) is added as
    specificity_paper.

    Raises:
        EmptyMatrix: T = 0
    """
    if cm.total == 0:
        raise EmptyMatrix("Confusion matrix holds no samples")
    return Metrics(
        sensitivity=_percent(cm.tp, cm.tp + cm.fn),
        specificity=_percent(cm.tn, cm.tn + cm.fp),
        ccr=_percent(cm.tp + cm.tn, cm.total),
        specificity_paper=_percent(cm.tn, cm.tn + cm.fn) if paper_eq2 else None,
    )


def _cell(value):
    return "n/a" if value is None else config.PERCENT_FORMAT % value


def format_confusion_table(cm, title=""):
    """
    Row-percent confusion table, true class per row:

        title            Normal    Abnormal
        Normal(1)         90.00       10.00
        Abnormal(0)       20.00       80.00
    """
    (tp_pct, fn_pct), (fp_pct, tn_pct) = cm.row_percent()
    width = max(len(title), len("Abnormal(0)"))
    lines = [
        f"{title:<{width}}  {'Normal':>10}  {'Abnormal':>10}",
        f"{'Normal(1)':<{width}}  {_cell(tp_pct):>10}  {_cell(fn_pct):>10}",
        f"{'Abnormal(0)':<{width}}  {_cell(fp_pct):>10}  {_cell(tn_pct):>10}",
    ]
    return "\n".join(lines)


def metrics_frame(rows, paper_eq2=False):
    """
    DataFrame with one row per method.

    Args:
        rows: iterable of (method, Metrics)
    """
    columns = ["method", "sensitivity", "specificity", "ccr"]
    if paper_eq2:
        columns.append("specificity_paper")
    records = []
    for method, result in rows:
        record = {
            "method": method,
            "sensitivity": result.sensitivity,
            "specificity": result.specificity,
            "ccr": result.ccr,
        }
        if paper_eq2:
            record["specificity_paper"] = result.specificity_paper
        records.append(record)
    return pd.DataFrame.from_records(records, columns=columns)
