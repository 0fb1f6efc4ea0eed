"""
Fused texture feature vectors and their CSV table format.
Slot order: four fractal features, then four GLCM features.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

import config
from errors import InvalidLabel, ShapeError
from processing.holder_analyzer import spectrum_summary

logger = logging.getLogger(__name__)

FEATURE_NAMES = (
    "fractal_dim", "alpha_peak", "f_max", "spectrum_width",
    "contrast", "correlation", "energy", "homogeneity",
)
CORRELATION_SLOT = FEATURE_NAMES.index("correlation")

NORMAL = 1
ABNORMAL = -1


class FeatureMask(Enum):
    """Feature subsets a classifier can be trained on."""
    FRACTAL = "fractal"
    GLCM = "glcm"
    COMBINED = "combined"

    @property
    def indices(self):
        if self is FeatureMask.FRACTAL:
            return (0, 1, 2, 3)
        if self is FeatureMask.GLCM:
            return (4, 5, 6, 7)
        return tuple(range(len(FEATURE_NAMES)))

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(
                f"Unknown feature mask {value!r}, expected one of {[m.value for m in cls]}"
            ) from None


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """
    Eight finite feature values plus a flag telling whether correlation was
    defined. An undefined correlation is stored as 0.0.
    """
    values: np.ndarray
    correlation_defined: bool = True

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True).ravel()
        if values.shape != (len(FEATURE_NAMES),):
            raise ShapeError(f"FeatureVector needs {len(FEATURE_NAMES)} values, got {values.size}")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"FeatureVector values must be finite, got {values}")
        if not self.correlation_defined:
            values[CORRELATION_SLOT] = 0.0
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'correlation_defined', bool(self.correlation_defined))

    def __getattr__(self, name):
        # Named access to slots: vector.contrast, vector.fractal_dim, ...
        if name in FEATURE_NAMES:
            return float(self.values[FEATURE_NAMES.index(name)])
        raise AttributeError(name)

    def masked(self, mask):
        return self.values[list(FeatureMask.parse(mask).indices)]

    def as_dict(self):
        return dict(zip(FEATURE_NAMES, self.values.tolist()))

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return (self.correlation_defined == other.correlation_defined
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.correlation_defined, self.values.tobytes()))


@dataclass(frozen=True)
class LabeledSample:
    features: FeatureVector
    label: int
    name: Optional[str] = None

    def __post_init__(self):
        if self.label not in (NORMAL, ABNORMAL):
            raise InvalidLabel(f"Label must be +1 or -1, got {self.label}")


def fuse_features(fractal, spectrum, glcm):
    """
    Assemble the fused feature vector.

    Args:
        fractal: FractalEstimate of the thresholded region of interest
        spectrum: MultifractalSpectrum of the Hoelder image
        glcm: Averaged GlcmFeatures

    Returns:
        FeatureVector
    """
    summary = spectrum_summary(spectrum)
    defined = glcm.correlation is not None
    return FeatureVector(
        values=[
            fractal.dimension,
            summary.alpha_peak,
            summary.f_max,
            summary.width,
            glcm.contrast,
            glcm.correlation if defined else 0.0,
            glcm.energy,
            glcm.homogeneity,
        ],
        correlation_defined=defined,
    )


def feature_matrix(samples):
    """(n, 8) array of raw feature values and the matching label vector."""
    X = np.vstack([s.features.values for s in samples]) if samples else np.empty((0, len(FEATURE_NAMES)))
    y = np.array([s.label for s in samples], dtype=np.float64)
    return X, y


def write_csv_table(path, frame, provenance_lines=()):
    """Write a DataFrame as CSV headed by '# key=value' provenance comments."""
    path = Path(path)
    with open(path, 'w', newline='') as handle:
        for line in provenance_lines:
            handle.write(f"{line}\n")
        frame.to_csv(handle, index=False, float_format=config.FLOAT_FORMAT, na_rep='')
    logger.debug("Wrote %d rows to %s", len(frame), path)


def read_csv_table(path):
    return pd.read_csv(path, comment='#', float_precision='round_trip')


def features_frame(rows):
    """
    DataFrame of feature rows.

    Args:
        rows: iterable of (path, label, FeatureVector)
    """
    records = []
    for path, label, vector in rows:
        record = {"path": str(path), "label": int(label)}
        record.update(vector.as_dict())
        if not vector.correlation_defined:
            record["correlation"] = np.nan
        records.append(record)
    return pd.DataFrame.from_records(records, columns=["path", "label", *FEATURE_NAMES])


def write_features(path, rows, provenance_lines=()):
    write_csv_table(path, features_frame(rows), provenance_lines)


def read_features(path):
    """
    Load a features CSV written by write_features.

    Returns:
        list of LabeledSample named after the path column
    """
    frame = read_csv_table(path)
    missing = [c for c in ("path", "label", *FEATURE_NAMES) if c not in frame.columns]
    if missing:
        raise ShapeError(f"{path}: missing columns {missing}")

    samples = []
    for row in frame.itertuples(index=False):
        record = row._asdict()
        defined = not pd.isna(record["correlation"])
        values = [0.0 if (name == "correlation" and not defined) else float(record[name])
                  for name in FEATURE_NAMES]
        samples.append(LabeledSample(
            features=FeatureVector(values, correlation_defined=defined),
            label=int(record["label"]),
            name=str(record["path"]),
        ))
    return samples
