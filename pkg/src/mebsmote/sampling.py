"""Synthetic minority oversampling.

Five generation strategies share one skeleton: pick minority base samples,
find each base's k nearest minority neighbors, then synthesize a point on
the segment between the base and a partner point.  The strategies differ in
how bases are chosen and what the partner is:

- ``smote``: partner is one neighbor, chosen uniformly.
- ``centroid-smote``: partner is the neighbors' centroid.
- ``meb-smote``: partner is the center of the neighbors' minimum enclosing
  ball.  The MEB center is set by boundary points rather than by density,
  so a dense (possibly mislabeled) clump among the neighbors pulls it far
  less than it pulls the centroid.
- ``adasyn``: like ``smote`` but each minority sample receives a synthesis
  quota proportional to how many of its neighbors in the full dataset are
  majority class.
- ``borderline-smote``: like ``smote`` but bases are drawn only from
  "danger" samples, those with at least half (but not all) majority
  neighbors in the full dataset.

Every synthetic point carries a :class:`SynthesisRecord` so the whole run
can be audited or replayed.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .data import Dataset, SingleClassError, stats
from .geometry import welzl_meb
from .neighbors import InsufficientNeighborsError, NeighborSet, centroid, k_nearest

__all__ = [
    "Method",
    "SamplingPlan",
    "SynthesisRecord",
    "adasyn_counts",
    "borderline_danger_set",
    "centroid_smote_sample",
    "derive_rng",
    "derive_seed",
    "meb_smote_sample",
    "oversample",
    "plan",
    "smote_sample",
    "write_audit_csv",
]

_log = logging.getLogger(__name__)

# Stream tags mixed with the user seed; every consumer of randomness gets its
# own child generator so results do not depend on evaluation order.
STREAM_PLAN = 0
STREAM_SAMPLE = 1
STREAM_FOLD = 2
STREAM_CV = 3


class Method(str, Enum):
    """Oversampling strategies, by their command-line names."""

    SMOTE = "smote"
    CENTROID_SMOTE = "centroid-smote"
    MEB_SMOTE = "meb-smote"
    ADASYN = "adasyn"
    BORDERLINE_SMOTE = "borderline-smote"


def derive_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent child generator for the (seed, *stream) lineage.

    This is the documented mixing function behind reproducible parallel
    streams: identical arguments give an identical generator on every run,
    and distinct stream paths give statistically independent ones.
    """
    return np.random.default_rng(np.random.SeedSequence([_checked_seed(seed), *stream]))


def derive_seed(seed: int, *stream: int) -> int:
    """Plain 64-bit seed derived from the (seed, *stream) lineage."""
    ss = np.random.SeedSequence([_checked_seed(seed), *stream])
    return int(ss.generate_state(1, np.uint64)[0])


def _checked_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return seed


@dataclass(frozen=True)
class SamplingPlan:
    """How many samples to synthesize and from which base rows.

    ``n_new`` is the majority/minority count gap (0 when already balanced);
    ``base_indices`` are dataset row indices of minority samples, drawn with
    replacement since the gap routinely exceeds the minority count.
    """

    n_new: int
    base_indices: np.ndarray
    method: Method
    k: int
    seed: int


@dataclass(frozen=True)
class SynthesisRecord:
    """Audit entry for one synthetic sample.

    Invariant: ``sample == base + coefficient * (partner - base)`` with the
    coefficient in [0, 1] (direction reversed when ``mirror`` is set).
    """

    sample: np.ndarray
    base_index: int
    base: np.ndarray
    partner: np.ndarray
    coefficient: float
    method: Method
    mirror: bool = False


def plan(dataset: Dataset, method, k: int = 5, seed: int = 42) -> SamplingPlan:
    """Decide how many samples to create and pick their base rows.

    ``n_new = n_majority - n_minority`` restores exact balance.  Bases are
    drawn uniformly with replacement from the minority rows, except that
    ADASYN derives per-sample quotas from :func:`adasyn_counts` and
    Borderline-SMOTE restricts the draw to :func:`borderline_danger_set`
    (falling back to all minority rows, with a warning, when no sample
    qualifies).
    """
    method = Method(method)
    counts = stats(dataset)  # rejects single-class input
    minority_rows = dataset.minority_rows()
    if minority_rows.shape[0] < k + 1:
        raise InsufficientNeighborsError(
            f"minority class has {minority_rows.shape[0]} samples; "
            f"k={k} needs at least {k + 1}"
        )
    n_new = max(0, counts.n_maj - counts.n_min)
    if n_new == 0:
        base = np.empty(0, dtype=int)
    elif method is Method.ADASYN:
        quota = adasyn_counts(dataset, k, n_new, minority_rows)
        base = np.repeat(minority_rows, quota)
    else:
        pool = minority_rows
        if method is Method.BORDERLINE_SMOTE:
            danger = borderline_danger_set(dataset, k, minority_rows)
            if danger.shape[0] == 0:
                _log.warning(
                    "no minority sample is in danger; borderline-smote falls "
                    "back to plain smote base selection"
                )
            else:
                pool = danger
        base = derive_rng(seed, STREAM_PLAN).choice(pool, size=n_new, replace=True)
    return SamplingPlan(n_new, base, method, k, _checked_seed(seed))


def smote_sample(
    base, neighbors, rng, *, mirror: bool = False, base_index: int = -1
) -> SynthesisRecord:
    """One synthetic sample between the base and a uniformly chosen neighbor."""
    base = np.asarray(base, dtype=float)
    pts = _neighbor_points(neighbors)
    partner = pts[int(rng.integers(pts.shape[0]))]
    return _interpolate(base, partner, float(rng.random()), Method.SMOTE, mirror, base_index)


def centroid_smote_sample(
    base, neighbors, rng, *, mirror: bool = False, base_index: int = -1
) -> SynthesisRecord:
    """One synthetic sample between the base and the neighbors' centroid."""
    base = np.asarray(base, dtype=float)
    partner = centroid(_neighbor_points(neighbors))
    return _interpolate(
        base, partner, float(rng.random()), Method.CENTROID_SMOTE, mirror, base_index
    )


def meb_smote_sample(
    base,
    neighbors,
    rng,
    *,
    mirror: bool = False,
    include_base: bool = False,
    base_index: int = -1,
) -> SynthesisRecord:
    """One synthetic sample between the base and the neighbors' MEB center.

    The ball covers the neighbor set only; ``include_base`` adds the base
    point to the enclosed set.
    """
    base = np.asarray(base, dtype=float)
    pts = _neighbor_points(neighbors)
    if include_base:
        pts = np.vstack([pts, base])
    partner = welzl_meb(pts, rng).center
    return _interpolate(
        base, partner, float(rng.random()), Method.MEB_SMOTE, mirror, base_index
    )


def adasyn_counts(
    dataset: Dataset, k: int, n_new: int, minority_rows=None
) -> np.ndarray:
    """Per-minority-sample synthesis quotas for ADASYN.

    Each minority sample's difficulty is the fraction of majority points
    among its k nearest neighbors in the full dataset.  Quotas are the
    difficulty weights scaled to ``n_new`` and rounded by largest remainder,
    so they sum to ``n_new`` exactly.  If no sample has any majority
    neighbor the quota is spread uniformly instead.
    """
    rows = dataset.minority_rows() if minority_rows is None else np.asarray(minority_rows, int)
    if rows.shape[0] == 0:
        raise SingleClassError("no minority samples to weigh")
    difficulty = np.empty(rows.shape[0])
    for i, row in enumerate(rows):
        hood = k_nearest(dataset.features, int(row), k)
        difficulty[i] = np.mean(~dataset.labels[hood.neighbor_indices])
    total = difficulty.sum()
    if total == 0.0:
        weights = np.full(rows.shape[0], 1.0 / rows.shape[0])
    else:
        weights = difficulty / total
    return _largest_remainder(weights, n_new)


def borderline_danger_set(dataset: Dataset, k: int, minority_rows=None) -> np.ndarray:
    """Minority rows whose neighborhoods mark them as borderline.

    With m the number of majority points among a sample's k nearest
    neighbors in the full dataset: danger when k/2 <= m < k, safe when
    m < k/2, noise (excluded) when m == k.
    """
    rows = dataset.minority_rows() if minority_rows is None else np.asarray(minority_rows, int)
    danger = []
    for row in rows:
        hood = k_nearest(dataset.features, int(row), k)
        m = int((~dataset.labels[hood.neighbor_indices]).sum())
        if k <= 2 * m < 2 * k:
            danger.append(int(row))
    return np.asarray(danger, dtype=int)


def oversample(
    dataset: Dataset,
    sampling_plan: SamplingPlan,
    *,
    mirror: bool = False,
    include_base_in_meb: bool = False,
) -> tuple[Dataset, list[SynthesisRecord]]:
    """Execute a plan: append the synthetic minority rows to the dataset.

    Returns the grown dataset (minority count equals majority count) and
    the per-sample audit trail.  Sample ``i`` draws from its own generator
    derived from ``(plan.seed, i)``, so output is identical no matter how
    the loop is scheduled.
    """
    if sampling_plan.n_new == 0:
        return dataset, []
    minority_rows = dataset.minority_rows()
    row_position = {int(row): i for i, row in enumerate(minority_rows)}
    bad = [int(r) for r in sampling_plan.base_indices if int(r) not in row_position]
    if bad:
        raise ValueError(f"plan base rows are not minority rows: {bad[:5]}")
    pool = dataset.features[minority_rows]

    hoods: dict[int, NeighborSet] = {}
    records: list[SynthesisRecord] = []
    new_rows = np.empty((sampling_plan.n_new, dataset.dim))
    for ordinal, row in enumerate(sampling_plan.base_indices):
        row = int(row)
        hood = hoods.get(row)
        if hood is None:
            hood = k_nearest(pool, row_position[row], sampling_plan.k)
            hoods[row] = hood
        rng = derive_rng(sampling_plan.seed, STREAM_SAMPLE, ordinal)
        base = dataset.features[row]
        if sampling_plan.method is Method.CENTROID_SMOTE:
            rec = centroid_smote_sample(base, hood, rng, mirror=mirror)
        elif sampling_plan.method is Method.MEB_SMOTE:
            rec = meb_smote_sample(
                base, hood, rng, mirror=mirror, include_base=include_base_in_meb
            )
        else:  # smote mechanics, shared by adasyn and borderline-smote
            rec = smote_sample(base, hood, rng, mirror=mirror)
        rec = replace(rec, method=sampling_plan.method, base_index=row)
        records.append(rec)
        new_rows[ordinal] = rec.sample

    grown = Dataset(
        np.vstack([dataset.features, new_rows]),
        np.concatenate([dataset.labels, np.ones(sampling_plan.n_new, bool)]),
        list(dataset.feature_names),
        dataset.label_name,
        dataset.positive_label,
        dataset.negative_label,
    )
    return grown, records


def write_audit_csv(records: list[SynthesisRecord], path) -> None:
    """Write the synthesis audit trail as a flat CSV table."""
    dim = records[0].sample.shape[0] if records else 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = ["ordinal", "method", "base_index"]
        header += [f"partner_{i + 1}" for i in range(dim)]
        header += ["coefficient"]
        header += [f"sample_{i + 1}" for i in range(dim)]
        writer.writerow(header)
        for ordinal, rec in enumerate(records):
            row = [str(ordinal), rec.method.value, str(rec.base_index)]
            row += [repr(float(v)) for v in rec.partner]
            row.append(repr(rec.coefficient))
            row += [repr(float(v)) for v in rec.sample]
            writer.writerow(row)


def _neighbor_points(neighbors) -> np.ndarray:
    pts = neighbors.points if isinstance(neighbors, NeighborSet) else np.asarray(neighbors, float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("empty neighbor set")
    return pts


def _interpolate(
    base: np.ndarray,
    partner: np.ndarray,
    coefficient: float,
    method: Method,
    mirror: bool,
    base_index: int,
) -> SynthesisRecord:
    direction = (base - partner) if mirror else (partner - base)
    sample = base + coefficient * direction
    return SynthesisRecord(
        sample=sample,
        base_index=base_index,
        base=base.copy(),
        partner=np.asarray(partner, dtype=float),
        coefficient=coefficient,
        method=method,
        mirror=mirror,
    )


def _largest_remainder(weights: np.ndarray, total: int) -> np.ndarray:
    """Integer quotas summing exactly to ``total``, proportional to weights."""
    quota = weights * total
    counts = np.floor(quota).astype(int)
    short = total - int(counts.sum())
    if short > 0:
        remainder = quota - counts
        order = np.lexsort((np.arange(remainder.shape[0]), -remainder))
        counts[order[:short]] += 1
    return counts
