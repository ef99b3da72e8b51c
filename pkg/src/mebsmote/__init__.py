"""Minority oversampling for imbalanced binary tabular data.

Synthesizes minority-class samples by interpolating toward a representative
point; alongside classic SMOTE, centroid-SMOTE, ADASYN and
Borderline-SMOTE, the package's own method (MEB-SMOTE) uses the center of
the neighbors' exact minimum enclosing ball, which resists being dragged
into dense or noisy regions.  Ships with an exact MEB solver, a brute-force
verification oracle, and a cross-validated evaluation harness.
"""

from .data import (
    ClassStats,
    Dataset,
    DatasetFormatError,
    MinMaxTable,
    SingleClassError,
    load_csv,
    minmax_normalize,
    stats,
    two_gaussian_dataset,
    write_csv,
)
from .evaluation import (
    BasicMetrics,
    ConfusionMatrix,
    FoldAudit,
    FoldSplit,
    MetricsReport,
    NoiseScenario,
    confusion,
    evaluate,
    knn_predict_scores,
    metrics,
    noise_scenario,
    roc_auc,
    stratified_kfold,
)
from .geometry import (
    Ball,
    DegenerateSupportError,
    ball_from_support,
    brute_force_meb,
    contains,
    euclidean_distance,
    welzl_meb,
)
from .neighbors import InsufficientNeighborsError, NeighborSet, centroid, k_nearest
from .sampling import (
    Method,
    SamplingPlan,
    SynthesisRecord,
    adasyn_counts,
    borderline_danger_set,
    centroid_smote_sample,
    derive_rng,
    derive_seed,
    meb_smote_sample,
    oversample,
    plan,
    smote_sample,
    write_audit_csv,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BasicMetrics",
    "ClassStats",
    "ConfusionMatrix",
    "Dataset",
    "DatasetFormatError",
    "DegenerateSupportError",
    "FoldAudit",
    "FoldSplit",
    "InsufficientNeighborsError",
    "Method",
    "MetricsReport",
    "MinMaxTable",
    "NeighborSet",
    "NoiseScenario",
    "SamplingPlan",
    "SingleClassError",
    "SynthesisRecord",
    "adasyn_counts",
    "ball_from_support",
    "borderline_danger_set",
    "brute_force_meb",
    "centroid",
    "centroid_smote_sample",
    "confusion",
    "contains",
    "derive_rng",
    "derive_seed",
    "euclidean_distance",
    "evaluate",
    "k_nearest",
    "knn_predict_scores",
    "load_csv",
    "meb_smote_sample",
    "metrics",
    "minmax_normalize",
    "noise_scenario",
    "oversample",
    "plan",
    "roc_auc",
    "smote_sample",
    "stats",
    "stratified_kfold",
    "two_gaussian_dataset",
    "welzl_meb",
    "write_audit_csv",
    "write_csv",
]
