"""Binary-labeled tabular datasets: CSV I/O, class statistics, min-max scaling.

Convention throughout the package: the positive class is the minority class.
When the caller designates a positive label that is actually the more
frequent class, loading proceeds with a warning and the imbalance ratio
drops below 1.
"""

from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ClassStats",
    "Dataset",
    "DatasetFormatError",
    "MinMaxTable",
    "SingleClassError",
    "load_csv",
    "minmax_normalize",
    "stats",
    "two_gaussian_dataset",
    "write_csv",
]

_log = logging.getLogger(__name__)


class DatasetFormatError(ValueError):
    """The file or arrays do not form a valid two-class dataset."""


class SingleClassError(ValueError):
    """The operation needs both classes to be present."""


@dataclass
class Dataset:
    """Immutable feature matrix with binary labels (True = positive/minority).

    ``positive_label`` / ``negative_label`` keep the original label spelling
    so a written file round-trips exactly.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: list[str] | None = None
    label_name: str = "label"
    positive_label: str = "1"
    negative_label: str = "0"

    def __post_init__(self):
        feats = np.ascontiguousarray(self.features, dtype=float)
        if feats.ndim != 2 or feats.shape[0] == 0 or feats.shape[1] == 0:
            raise DatasetFormatError("features must be a non-empty 2-d matrix")
        if not np.all(np.isfinite(feats)):
            raise DatasetFormatError("features contain non-finite values")
        labels = np.asarray(self.labels)
        if labels.dtype != bool:
            vals = np.unique(labels)
            if not np.isin(vals, (0, 1)).all():
                raise DatasetFormatError(f"labels must be boolean or 0/1, got {vals!r}")
            labels = labels.astype(bool)
        if labels.shape != (feats.shape[0],):
            raise DatasetFormatError("labels must be one flag per feature row")
        names = self.feature_names
        if names is None:
            names = [f"f{i + 1}" for i in range(feats.shape[1])]
        names = [str(c) for c in names]
        if len(names) != feats.shape[1]:
            raise DatasetFormatError("one feature name per column required")
        feats.flags.writeable = False
        labels = labels.copy()
        labels.flags.writeable = False
        self.features = feats
        self.labels = labels
        self.feature_names = names

    @property
    def n(self) -> int:
        return int(self.features.shape[0])

    @property
    def dim(self) -> int:
        return int(self.features.shape[1])

    def minority_rows(self) -> np.ndarray:
        """Row indices of the positive (minority) class."""
        return np.flatnonzero(self.labels)

    def majority_rows(self) -> np.ndarray:
        return np.flatnonzero(~self.labels)

    def take(self, indices) -> "Dataset":
        """New dataset from the given rows, preserving label metadata."""
        idx = np.asarray(indices, dtype=int)
        return Dataset(
            self.features[idx],
            self.labels[idx],
            list(self.feature_names),
            self.label_name,
            self.positive_label,
            self.negative_label,
        )


@dataclass(frozen=True)
class ClassStats:
    """Class counts and the imbalance ratio (majority / minority)."""

    n_min: int
    n_maj: int
    ir: float
    dim: int
    total: int

    def table_row(self) -> str:
        return f"Min {self.n_min}  Maj {self.n_maj}  IR {self.ir:.2f}  Att {self.dim}"

    def to_text(self) -> str:
        return "\n".join(
            [
                f"minority: {self.n_min}",
                f"majority: {self.n_maj}",
                f"imbalance_ratio: {self.ir:.6g}",
                f"attributes: {self.dim}",
                f"total: {self.total}",
            ]
        )


def stats(dataset: Dataset) -> ClassStats:
    """Class counts and imbalance ratio; requires both classes present."""
    n_min = int(dataset.labels.sum())
    n_maj = dataset.n - n_min
    if n_min == 0 or n_maj == 0:
        raise SingleClassError(
            "imbalance ratio is undefined for a single-class dataset"
        )
    return ClassStats(n_min, n_maj, n_maj / n_min, dataset.dim, dataset.n)


def load_csv(path, label_column: str | None = None, positive_label=None) -> Dataset:
    """Load a two-class dataset from a headed, comma-separated file.

    The label column is ``label_column`` or, by default, the last column.
    All other columns must parse as finite numbers; offending rows are
    reported by file line number.  ``positive_label`` picks the positive
    (minority) class; when omitted the less frequent label is used, with
    ties broken toward the lexicographically smaller value.
    """
    path = os.fspath(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DatasetFormatError(f"{path}: empty file") from None
        rows = list(reader)
    rows = [row for row in rows if row]  # tolerate blank trailing lines
    if not rows:
        raise DatasetFormatError(f"{path}: no data rows")
    if len(header) < 2:
        raise DatasetFormatError(f"{path}: need at least one feature column and a label column")

    if label_column is None:
        label_idx = len(header) - 1
    else:
        if label_column not in header:
            raise DatasetFormatError(f"{path}: no column named {label_column!r}")
        label_idx = header.index(label_column)
    feature_idx = [i for i in range(len(header)) if i != label_idx]

    feats = np.empty((len(rows), len(feature_idx)))
    labels_raw: list[str] = []
    bad: list[str] = []
    for r, row in enumerate(rows):
        line = r + 2  # 1-based, after the header line
        if len(row) != len(header):
            bad.append(f"line {line}: expected {len(header)} fields, got {len(row)}")
            continue
        for j, i in enumerate(feature_idx):
            cell = row[i].strip()
            try:
                value = float(cell)
            except ValueError:
                bad.append(f"line {line}: non-numeric value {cell!r} in column {header[i]!r}")
                break
            if not math.isfinite(value):
                bad.append(f"line {line}: non-finite value {cell!r} in column {header[i]!r}")
                break
            feats[r, j] = value
        else:
            labels_raw.append(row[label_idx].strip())
    if bad:
        shown = "; ".join(bad[:5])
        more = f" (+{len(bad) - 5} more)" if len(bad) > 5 else ""
        raise DatasetFormatError(f"{path}: {shown}{more}")

    values = sorted(set(labels_raw))
    if len(values) == 1:
        raise SingleClassError(
            f"{path}: label column has the single value {values[0]!r}; two classes required"
        )
    if len(values) != 2:
        raise DatasetFormatError(
            f"{path}: expected exactly 2 label values, found {len(values)}: {values[:6]!r}"
        )
    counts = {v: labels_raw.count(v) for v in values}
    if positive_label is not None:
        pos = str(positive_label)
        if pos not in counts:
            raise DatasetFormatError(
                f"{path}: positive label {pos!r} not among label values {values!r}"
            )
    else:
        pos = min(values, key=lambda v: (counts[v], v))
    neg = values[0] if values[1] == pos else values[1]
    if counts[pos] > counts[neg]:
        _log.warning(
            "positive label %r is the more frequent class (%d vs %d); imbalance ratio < 1",
            pos,
            counts[pos],
            counts[neg],
        )

    labels = np.array([v == pos for v in labels_raw])
    return Dataset(
        feats,
        labels,
        feature_names=[header[i] for i in feature_idx],
        label_name=header[label_idx],
        positive_label=pos,
        negative_label=neg,
    )


def write_csv(dataset: Dataset, path, synthetic_flags=None, flag_column: str = "synthetic") -> None:
    """Write the dataset as headed CSV, round-trippable by :func:`load_csv`.

    Floats are written in shortest round-trip form, so values re-load
    bit-exactly.  ``synthetic_flags`` (one bool per row) adds a 0/1 marker
    column named ``flag_column``.
    """
    if synthetic_flags is not None:
        synthetic_flags = np.asarray(synthetic_flags, dtype=bool)
        if synthetic_flags.shape != (dataset.n,):
            raise ValueError("synthetic_flags must have one entry per row")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = [*dataset.feature_names, dataset.label_name]
        if synthetic_flags is not None:
            header.append(flag_column)
        writer.writerow(header)
        for i in range(dataset.n):
            row = [repr(float(v)) for v in dataset.features[i]]
            row.append(dataset.positive_label if dataset.labels[i] else dataset.negative_label)
            if synthetic_flags is not None:
                row.append("1" if synthetic_flags[i] else "0")
            writer.writerow(row)


@dataclass(frozen=True)
class MinMaxTable:
    """Per-feature min/max recorded by :func:`minmax_normalize`.

    Lets callers map further points (synthetic samples, test folds) into the
    normalized space and back out of it.
    """

    mins: np.ndarray
    maxs: np.ndarray
    constant: np.ndarray

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        span = np.where(self.constant, 1.0, self.maxs - self.mins)
        out = (pts - self.mins) / span
        out[..., self.constant] = 0.0
        return out

    def invert(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts * (self.maxs - self.mins) + self.mins


def minmax_normalize(dataset: Dataset) -> tuple[Dataset, MinMaxTable]:
    """Rescale every feature to [0, 1]; constant features map to 0.

    Returns the rescaled dataset and the min/max table for inverse
    transforms.  Normalizing an already-normalized dataset is the identity.
    """
    mins = dataset.features.min(axis=0)
    maxs = dataset.features.max(axis=0)
    constant = maxs == mins
    if constant.any():
        names = [n for n, c in zip(dataset.feature_names, constant) if c]
        _log.warning("constant feature(s) mapped to 0: %s", ", ".join(names))
    table = MinMaxTable(mins, maxs, constant)
    scaled = dataset.features.copy()
    scaled = table.apply(scaled)
    out = Dataset(
        scaled,
        dataset.labels,
        list(dataset.feature_names),
        dataset.label_name,
        dataset.positive_label,
        dataset.negative_label,
    )
    return out, table


def two_gaussian_dataset(
    n_minority: int = 50,
    n_majority: int = 500,
    distance: float = 2.0,
    dim: int = 2,
    seed: int = 0,
) -> Dataset:
    """Synthetic imbalanced dataset: two unit-variance Gaussian clusters.

    The majority cluster sits at the origin and the minority cluster at
    ``(distance, 0, ..., 0)``.  Defaults give imbalance ratio 10.
    """
    rng = np.random.default_rng(seed)
    majority = rng.normal(0.0, 1.0, size=(n_majority, dim))
    minority = rng.normal(0.0, 1.0, size=(n_minority, dim))
    minority[:, 0] += distance
    feats = np.vstack([majority, minority])
    labels = np.concatenate([np.zeros(n_majority, bool), np.ones(n_minority, bool)])
    return Dataset(feats, labels)
