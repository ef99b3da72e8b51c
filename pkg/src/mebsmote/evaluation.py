"""Metrics, stratified cross-validation, and the oversampling comparison harness.

The harness answers one question: does rebalancing the training data help a
classifier find the minority class?  Each cross-validation fold is
oversampled on its training portion only (test folds never see synthetic
points), scored with a deterministic k-NN probability classifier, and
summarized as mean and population standard deviation per metric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, minmax_normalize
from .neighbors import centroid
from .geometry import euclidean_distance, welzl_meb
from .sampling import (
    STREAM_CV,
    STREAM_FOLD,
    Method,
    SynthesisRecord,
    derive_rng,
    derive_seed,
    oversample,
    plan,
)

__all__ = [
    "BasicMetrics",
    "ConfusionMatrix",
    "FoldAudit",
    "FoldSplit",
    "MetricsReport",
    "NoiseScenario",
    "confusion",
    "evaluate",
    "knn_predict_scores",
    "metrics",
    "noise_scenario",
    "roc_auc",
    "stratified_kfold",
]

METRIC_NAMES = ("acc", "precision", "recall", "f1", "auc")


@dataclass(frozen=True)
class ConfusionMatrix:
    """Binary confusion counts; positive = minority class."""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class BasicMetrics:
    """Accuracy, precision, recall and F1 from one confusion matrix.

    A zero-denominator precision or recall is reported as 0 with the
    matching ``*_defined`` flag cleared, so aggregates stay finite.
    """

    acc: float
    precision: float
    recall: float
    f1: float
    precision_defined: bool = True
    recall_defined: bool = True


def confusion(y_true, y_pred) -> ConfusionMatrix:
    """Count binary prediction outcomes (positive = minority class)."""
    yt = _as_binary(y_true, "y_true")
    yp = _as_binary(y_pred, "y_pred")
    if yt.shape != yp.shape:
        raise ValueError(f"length mismatch: {yt.shape[0]} true vs {yp.shape[0]} predicted")
    return ConfusionMatrix(
        tp=int(np.sum(yt & yp)),
        fp=int(np.sum(~yt & yp)),
        fn=int(np.sum(yt & ~yp)),
        tn=int(np.sum(~yt & ~yp)),
    )


def metrics(cm: ConfusionMatrix) -> BasicMetrics:
    """Accuracy, precision, recall, F1 (harmonic mean of the last two)."""
    if cm.total == 0:
        raise ValueError("empty confusion matrix")
    acc = (cm.tp + cm.tn) / cm.total
    precision_defined = cm.tp + cm.fp > 0
    recall_defined = cm.tp + cm.fn > 0
    precision = cm.tp / (cm.tp + cm.fp) if precision_defined else 0.0
    recall = cm.tp / (cm.tp + cm.fn) if recall_defined else 0.0
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return BasicMetrics(acc, precision, recall, f1, precision_defined, recall_defined)


def roc_auc(y_true, scores) -> float:
    """Area under the ROC curve via the rank (Mann-Whitney) formulation.

    Equals the probability that a random positive outscores a random
    negative, counting ties as 1/2; identical to the trapezoidal area under
    the threshold-swept curve.
    """
    yt = _as_binary(y_true, "y_true")
    s = np.asarray(scores, dtype=float)
    if yt.shape != s.shape:
        raise ValueError(f"length mismatch: {yt.shape[0]} labels vs {s.shape[0]} scores")
    n_pos = int(yt.sum())
    n_neg = yt.shape[0] - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("roc_auc needs at least one positive and one negative sample")
    # Midranks: tied scores share the average of the ranks they occupy.
    _, inverse, counts = np.unique(s, return_inverse=True, return_counts=True)
    ends = np.cumsum(counts)
    midranks = ends - (counts - 1) / 2.0
    ranks = midranks[inverse]
    pos_rank_sum = float(ranks[yt].sum())
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


@dataclass(frozen=True)
class FoldSplit:
    """Disjoint, exhaustive test folds with per-class proportions preserved."""

    fold_count: int
    train_indices: list[np.ndarray]
    test_indices: list[np.ndarray]


def stratified_kfold(dataset: Dataset, folds: int, seed: int) -> FoldSplit:
    """Deterministic stratified k-fold split.

    Each class is shuffled with a generator derived from ``seed`` and dealt
    round-robin, so every test fold's class counts differ from exact
    proportionality by at most one sample per class.
    """
    if folds < 2:
        raise ValueError("folds must be >= 2")
    rng = derive_rng(seed, STREAM_CV)
    test_sets: list[list[int]] = [[] for _ in range(folds)]
    for rows in (dataset.minority_rows(), dataset.majority_rows()):
        if rows.shape[0] < folds:
            raise ValueError(
                f"a class with {rows.shape[0]} samples cannot be split into {folds} folds"
            )
        shuffled = rng.permutation(rows)
        for f in range(folds):
            test_sets[f].extend(int(i) for i in shuffled[f::folds])
    everything = np.arange(dataset.n)
    test_indices = [np.sort(np.asarray(t, dtype=int)) for t in test_sets]
    train_indices = [np.setdiff1d(everything, t) for t in test_indices]
    return FoldSplit(folds, train_indices, test_indices)


def knn_predict_scores(train: Dataset, test_points, k: int = 5) -> np.ndarray:
    """Minority-probability scores from a k-nearest-neighbor vote.

    Each test point's score is the fraction of its k nearest training rows
    (both classes, distance ties broken by row order) that are minority
    class.  The implied label rule is positive iff score >= 0.5.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if train.n < k:
        raise ValueError(f"training set has {train.n} rows; k={k} needs at least {k}")
    pts = np.asarray(test_points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("test points must be a non-empty 2-d array")
    if pts.shape[1] != train.dim:
        raise ValueError(f"test points are {pts.shape[1]}-d, training data is {train.dim}-d")
    d2 = (
        np.sum(pts**2, axis=1)[:, None]
        + np.sum(train.features**2, axis=1)[None, :]
        - 2.0 * (pts @ train.features.T)
    )
    nearest = np.argsort(d2, axis=1, kind="stable")[:, :k]
    return train.labels[nearest].mean(axis=1)


@dataclass(frozen=True)
class FoldAudit:
    """Synthesis trail of one fold, with the row maps needed to check it."""

    fold_index: int
    train_rows: np.ndarray
    test_rows: np.ndarray
    records: list[SynthesisRecord]


@dataclass
class MetricsReport:
    """Per-fold metric values with their mean and population std."""

    method: str
    fold_count: int
    seed: int
    per_fold: dict[str, np.ndarray]
    undefined_precision_folds: int = 0
    undefined_recall_folds: int = 0
    audits: list[FoldAudit] | None = None

    def mean(self, name: str) -> float:
        return float(np.mean(self.per_fold[name]))

    def std(self, name: str) -> float:
        return float(np.std(self.per_fold[name]))

    def to_text(self) -> str:
        """Key/value rendering with the per-fold arrays spelled out."""
        lines = [
            f"method: {self.method}",
            f"folds: {self.fold_count}",
            f"seed: {self.seed}",
        ]
        for name in METRIC_NAMES:
            values = " ".join(f"{v:.6f}" for v in self.per_fold[name])
            lines.append(f"{name}.per_fold: {values}")
            lines.append(f"{name}.mean: {self.mean(name):.6f}")
            lines.append(f"{name}.std: {self.std(name):.6f}")
        lines.append(f"undefined_precision_folds: {self.undefined_precision_folds}")
        lines.append(f"undefined_recall_folds: {self.undefined_recall_folds}")
        return "\n".join(lines)

    def summary_row(self, sep: str = ",") -> str:
        """One spreadsheet-ready row of mean/std pairs."""
        cells = [self.method]
        for name in METRIC_NAMES:
            cells.append(f"{self.mean(name):.6f}")
            cells.append(f"{self.std(name):.6f}")
        return sep.join(cells)

    @staticmethod
    def summary_header(sep: str = ",") -> str:
        cells = ["method"]
        for name in METRIC_NAMES:
            cells.append(f"{name}_mean")
            cells.append(f"{name}_std")
        return sep.join(cells)


def evaluate(
    dataset: Dataset,
    method=None,
    k_neighbors: int = 5,
    folds: int = 5,
    seed: int = 42,
    *,
    classifier_k: int = 5,
    sampling_seed: int | None = None,
    mirror: bool = False,
    normalize: bool = False,
    keep_audit: bool = False,
) -> MetricsReport:
    """Cross-validated metrics for one oversampling method (or none).

    For every fold the training portion alone is oversampled, the k-NN
    scorer is fit on it, and the untouched test fold is scored.  ``method``
    ``None`` (or ``"none"``) skips oversampling and measures the imbalanced
    baseline; in that case the report does not depend on ``sampling_seed``
    at all.  Fold-level sampling seeds derive from ``sampling_seed`` (default:
    ``seed``) and the fold index, so the whole run is reproducible from one
    integer.
    """
    m = _as_method(method)
    split = stratified_kfold(dataset, folds, seed)
    base_seed = seed if sampling_seed is None else sampling_seed
    per_fold: dict[str, list[float]] = {name: [] for name in METRIC_NAMES}
    undefined_p = 0
    undefined_r = 0
    audits: list[FoldAudit] = []
    for f in range(folds):
        train = dataset.take(split.train_indices[f])
        test_x = dataset.features[split.test_indices[f]]
        test_y = dataset.labels[split.test_indices[f]]
        if not test_y.any() or test_y.all():
            raise ValueError(f"fold {f} has a single-class test set; reduce the fold count")
        if normalize:
            train, table = minmax_normalize(train)
            test_x = table.apply(test_x)
        records: list[SynthesisRecord] = []
        if m is not None:
            fold_plan = plan(train, m, k_neighbors, derive_seed(base_seed, STREAM_FOLD, f))
            train, records = oversample(train, fold_plan, mirror=mirror)
        scores = knn_predict_scores(train, test_x, classifier_k)
        predicted = scores >= 0.5
        basic = metrics(confusion(test_y, predicted))
        per_fold["acc"].append(basic.acc)
        per_fold["precision"].append(basic.precision)
        per_fold["recall"].append(basic.recall)
        per_fold["f1"].append(basic.f1)
        per_fold["auc"].append(roc_auc(test_y, scores))
        undefined_p += 0 if basic.precision_defined else 1
        undefined_r += 0 if basic.recall_defined else 1
        if keep_audit:
            audits.append(
                FoldAudit(f, split.train_indices[f], split.test_indices[f], records)
            )
    return MetricsReport(
        method="none" if m is None else m.value,
        fold_count=folds,
        seed=seed,
        per_fold={name: np.asarray(vals) for name, vals in per_fold.items()},
        undefined_precision_folds=undefined_p,
        undefined_recall_folds=undefined_r,
        audits=audits if keep_audit else None,
    )


@dataclass(frozen=True)
class NoiseScenario:
    """Fixed 2-d arrangement of a base sample with mostly-noise neighbors.

    Four of the five neighbors form a dense cluster far from the base
    (standing in for mislabeled points); the fifth sits in the normal
    region.  The neighbors' centroid is dragged toward the dense cluster,
    while their MEB center, set by the boundary points, stays closer to the
    base.
    """

    base: np.ndarray
    neighbors: np.ndarray
    noise_cluster: np.ndarray
    normal_neighbor: np.ndarray
    meb_center: np.ndarray
    meb_radius: float
    neighbor_centroid: np.ndarray
    noise_centroid: np.ndarray

    @property
    def meb_center_to_base(self) -> float:
        return euclidean_distance(self.meb_center, self.base)

    @property
    def centroid_to_base(self) -> float:
        return euclidean_distance(self.neighbor_centroid, self.base)


def noise_scenario() -> NoiseScenario:
    """Construct the fixed dense-noise scenario and its representative points."""
    base = np.array([0.0, 0.0])
    noise_cluster = np.array([[5.0, 0.1], [5.0, -0.1], [5.1, 0.0], [4.9, 0.0]])
    normal_neighbor = np.array([1.0, 0.0])
    neighbors = np.vstack([noise_cluster, normal_neighbor])
    ball = welzl_meb(neighbors, rng=0)  # result independent of the rng
    return NoiseScenario(
        base=base,
        neighbors=neighbors,
        noise_cluster=noise_cluster,
        normal_neighbor=normal_neighbor,
        meb_center=ball.center,
        meb_radius=ball.radius,
        neighbor_centroid=centroid(neighbors),
        noise_centroid=centroid(noise_cluster),
    )


def _as_method(method) -> Method | None:
    if method is None or method == "none":
        return None
    return Method(method)


def _as_binary(y, name: str) -> np.ndarray:
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a flat label sequence")
    if arr.dtype == bool:
        return arr
    values = np.unique(arr)
    if values.size > 0 and not np.isin(values, (0, 1)).all():
        raise ValueError(f"{name} has unknown label values {values!r}; expected 0/1")
    return arr.astype(bool)
