import numpy as np
import pytest

from mebsmote.data import Dataset, two_gaussian_dataset
from mebsmote.evaluation import (
    ConfusionMatrix,
    MetricsReport,
    confusion,
    evaluate,
    knn_predict_scores,
    metrics,
    noise_scenario,
    roc_auc,
    stratified_kfold,
)
from mebsmote.geometry import Ball, euclidean_distance
from mebsmote.sampling import centroid_smote_sample, derive_rng, meb_smote_sample


def pairwise_auc(y_true, scores):
    """Independent oracle: fraction of positive/negative pairs ranked right."""
    y = np.asarray(y_true, bool)
    s = np.asarray(scores, float)
    pos = s[y]
    neg = s[~y]
    total = 0.0
    for a in pos:
        for b in neg:
            if a > b:
                total += 1.0
            elif a == b:
                total += 0.5
    return total / (len(pos) * len(neg))


class TestConfusion:
    def test_mixed_outcomes(self):
        cm = confusion([1, 1, 0, 0], [1, 0, 1, 0])
        assert (cm.tp, cm.fn, cm.fp, cm.tn) == (1, 1, 1, 1)

    def test_perfect_prediction(self):
        cm = confusion([1, 0, 1], [1, 0, 1])
        assert cm.fp == 0 and cm.fn == 0

    def test_all_predicted_negative(self):
        cm = confusion([1, 1, 0], [0, 0, 0])
        assert (cm.tp, cm.fn, cm.tn, cm.fp) == (0, 2, 1, 0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            confusion([1, 0], [1])

    def test_unknown_labels(self):
        with pytest.raises(ValueError, match="unknown label"):
            confusion([1, 2], [1, 0])


class TestMetrics:
    def test_worked_example(self):
        m = metrics(ConfusionMatrix(tp=3, fp=1, fn=2, tn=4))
        assert m.acc == pytest.approx(0.7)
        assert m.precision == pytest.approx(0.75)
        assert m.recall == pytest.approx(0.6)
        assert m.f1 == pytest.approx(0.66667, abs=1e-5)

    def test_perfect(self):
        m = metrics(ConfusionMatrix(tp=5, fp=0, fn=0, tn=5))
        assert (m.acc, m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0, 1.0)

    def test_degenerate_no_positive_predictions(self):
        m = metrics(ConfusionMatrix(tp=0, fp=0, fn=5, tn=5))
        assert m.acc == pytest.approx(0.5)
        assert m.precision == 0.0 and not m.precision_defined
        assert m.recall == 0.0 and m.recall_defined
        assert m.f1 == 0.0

    def test_f1_is_harmonic_mean(self):
        m = metrics(ConfusionMatrix(tp=7, fp=3, fn=2, tn=11))
        assert m.f1 == pytest.approx(2 * m.precision * m.recall / (m.precision + m.recall))

    def test_empty_matrix(self):
        with pytest.raises(ValueError, match="empty"):
            metrics(ConfusionMatrix(0, 0, 0, 0))


class TestRocAuc:
    def test_perfect_separation(self):
        assert roc_auc([1, 1, 0, 0], [0.9, 0.8, 0.2, 0.1]) == 1.0

    def test_all_tied_scores(self):
        assert roc_auc([1, 0, 1, 0], [0.5, 0.5, 0.5, 0.5]) == 0.5

    def test_three_of_four_pairs(self):
        assert roc_auc([1, 0, 1, 0], [0.9, 0.8, 0.7, 0.1]) == pytest.approx(0.75)

    def test_single_class_is_an_error(self):
        with pytest.raises(ValueError, match="one positive and one negative"):
            roc_auc([1, 1, 1], [0.1, 0.2, 0.3])

    def test_matches_pairwise_oracle(self):
        rng = np.random.default_rng(8)
        for _ in range(150):
            n = int(rng.integers(2, 200))
            y = rng.integers(0, 2, n).astype(bool)
            if y.all() or not y.any():
                continue
            # quantized scores force plenty of ties
            s = np.round(rng.random(n), 1)
            assert roc_auc(y, s) == pairwise_auc(y, s)

    def test_complement_symmetry_without_ties(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            n = int(rng.integers(2, 60))
            y = rng.integers(0, 2, n).astype(bool)
            if y.all() or not y.any():
                continue
            s = rng.permutation(n).astype(float)  # distinct scores
            assert roc_auc(y, s) + roc_auc(y, -s) == pytest.approx(1.0)


class TestStratifiedKFold:
    def test_exact_division(self):
        ds = two_gaussian_dataset(10, 20, seed=0)
        split = stratified_kfold(ds, 5, 1)
        for test_rows in split.test_indices:
            assert int(ds.labels[test_rows].sum()) == 2
            assert int((~ds.labels[test_rows]).sum()) == 4

    def test_remainder_distribution(self):
        ds = two_gaussian_dataset(11, 20, seed=0)
        split = stratified_kfold(ds, 5, 1)
        pos_counts = sorted(int(ds.labels[t].sum()) for t in split.test_indices)
        assert pos_counts == [2, 2, 2, 2, 3]

    def test_partition(self):
        ds = two_gaussian_dataset(13, 29, seed=0)
        split = stratified_kfold(ds, 4, 7)
        all_test = np.concatenate(split.test_indices)
        assert np.array_equal(np.sort(all_test), np.arange(ds.n))
        for train, test in zip(split.train_indices, split.test_indices):
            assert np.intersect1d(train, test).size == 0
            assert train.size + test.size == ds.n

    def test_deterministic_per_seed(self):
        ds = two_gaussian_dataset(10, 20, seed=0)
        a = stratified_kfold(ds, 5, 3)
        b = stratified_kfold(ds, 5, 3)
        c = stratified_kfold(ds, 5, 4)
        assert all(np.array_equal(x, y) for x, y in zip(a.test_indices, b.test_indices))
        assert any(
            not np.array_equal(x, y) for x, y in zip(a.test_indices, c.test_indices)
        )

    def test_class_smaller_than_fold_count(self):
        ds = two_gaussian_dataset(3, 20, seed=0)
        with pytest.raises(ValueError, match="3 samples"):
            stratified_kfold(ds, 5, 1)


class TestKnnScores:
    def test_three_of_five_minority(self):
        feats = np.array([[0.0], [0.1], [0.2], [0.3], [0.4], [50.0]])
        labels = np.array([1, 1, 1, 0, 0, 0])
        train = Dataset(feats, labels)
        scores = knn_predict_scores(train, np.array([[0.05]]), 5)
        assert scores[0] == pytest.approx(0.6)

    def test_pure_majority_neighborhood(self):
        feats = np.vstack([np.full((5, 1), 100.0) + np.arange(5)[:, None], [[0.0]]])
        labels = np.array([0, 0, 0, 0, 0, 1])
        train = Dataset(feats, labels)
        scores = knn_predict_scores(train, np.array([[102.0]]), 5)
        assert scores[0] == 0.0

    def test_coincident_minority_k1(self):
        train = Dataset(np.array([[1.0], [5.0]]), np.array([1, 0]))
        scores = knn_predict_scores(train, np.array([[1.0]]), 1)
        assert scores[0] == 1.0

    def test_train_smaller_than_k(self):
        train = Dataset(np.array([[1.0], [5.0]]), np.array([1, 0]))
        with pytest.raises(ValueError, match="at least"):
            knn_predict_scores(train, np.array([[1.0]]), 3)

    def test_dimension_mismatch(self):
        train = Dataset(np.ones((4, 2)), np.array([1, 0, 1, 0]))
        with pytest.raises(ValueError, match="-d"):
            knn_predict_scores(train, np.ones((2, 3)), 2)


class TestEvaluate:
    def test_fold_counts_in_report(self):
        ds = two_gaussian_dataset(15, 40, seed=0)
        report = evaluate(ds, None, folds=5, seed=1)
        for name in ("acc", "precision", "recall", "f1", "auc"):
            assert report.per_fold[name].shape == (5,)
            assert report.mean(name) == pytest.approx(float(np.mean(report.per_fold[name])))
            assert report.std(name) == pytest.approx(float(np.std(report.per_fold[name])))
            assert min(report.per_fold[name]) <= report.mean(name) <= max(report.per_fold[name])

    def test_oversampling_lifts_recall(self):
        ds = two_gaussian_dataset(50, 500, 2.0, 12, seed=0)
        baseline = evaluate(ds, None, folds=5, seed=0)
        balanced = evaluate(ds, "meb-smote", folds=5, seed=0)
        assert balanced.mean("recall") > baseline.mean("recall")

    def test_baseline_ignores_sampling_seed(self):
        ds = two_gaussian_dataset(15, 40, seed=0)
        a = evaluate(ds, None, folds=5, seed=3, sampling_seed=111)
        b = evaluate(ds, None, folds=5, seed=3, sampling_seed=222)
        for name in a.per_fold:
            assert np.array_equal(a.per_fold[name], b.per_fold[name])

    def test_identical_class_distributions_give_chance_auc(self):
        aucs = []
        for seed in range(6):
            ds = two_gaussian_dataset(30, 90, distance=0.0, seed=seed)
            report = evaluate(ds, None, folds=3, seed=seed)
            aucs.append(report.mean("auc"))
        assert abs(float(np.mean(aucs)) - 0.5) < 0.1

    def test_no_leakage_into_test_folds(self):
        ds = two_gaussian_dataset(20, 60, seed=1)
        report = evaluate(ds, "smote", folds=4, seed=2, keep_audit=True)
        assert report.audits is not None and len(report.audits) == 4
        for audit in report.audits:
            assert len(audit.records) > 0
            test_rows = set(audit.test_rows.tolist())
            for rec in audit.records:
                original_row = int(audit.train_rows[rec.base_index])
                assert original_row not in test_rows

    def test_normalize_option(self):
        ds = two_gaussian_dataset(15, 40, seed=2)
        report = evaluate(ds, "smote", folds=3, seed=1, normalize=True)
        assert report.per_fold["acc"].shape == (3,)

    def test_report_serialization_shapes(self):
        ds = two_gaussian_dataset(15, 40, seed=0)
        report = evaluate(ds, "smote", folds=5, seed=1)
        text = report.to_text()
        assert "method: smote" in text
        assert "auc.per_fold:" in text
        assert len(text.splitlines()) == 3 + 5 * 3 + 2
        header = MetricsReport.summary_header()
        row = report.summary_row()
        assert header.startswith("method,acc_mean,acc_std")
        assert len(row.split(",")) == len(header.split(","))


class TestNoiseScenario:
    def test_representative_point_geometry(self):
        sc = noise_scenario()
        assert sc.meb_center == pytest.approx([3.05, 0.0])
        assert sc.neighbor_centroid == pytest.approx([4.2, 0.0])
        assert sc.meb_center_to_base < sc.centroid_to_base
        # the centroid always sits inside the neighbors' enclosing ball
        ball = Ball(sc.meb_center, sc.meb_radius)
        assert ball.contains(sc.neighbor_centroid)

    def test_meb_center_farther_from_noise_cluster(self):
        sc = noise_scenario()
        d_meb = euclidean_distance(sc.meb_center, sc.noise_centroid)
        d_cen = euclidean_distance(sc.neighbor_centroid, sc.noise_centroid)
        assert d_meb > d_cen

    def test_draws_keep_distance_from_noise(self):
        sc = noise_scenario()
        meb_dist = []
        cen_dist = []
        for i in range(100):
            rng_a = derive_rng(0, 100, i)
            rng_b = derive_rng(0, 200, i)
            meb_rec = meb_smote_sample(sc.base, sc.neighbors, rng_a)
            cen_rec = centroid_smote_sample(sc.base, sc.neighbors, rng_b)
            meb_dist.append(euclidean_distance(meb_rec.sample, sc.noise_centroid))
            cen_dist.append(euclidean_distance(cen_rec.sample, sc.noise_centroid))
        assert float(np.median(meb_dist)) > float(np.median(cen_dist))
