import numpy as np
import pytest

from symnet.classifiers import (
    GaussianNaiveBayes,
    KNearestNeighbors,
    LinearSVM,
    MultilayerPerceptron,
)

ALL_CLASSIFIERS = [
    KNearestNeighbors(k=1),
    KNearestNeighbors(k=3),
    GaussianNaiveBayes(),
    LinearSVM(),
    MultilayerPerceptron(seed=3),
]


def two_blobs(rng, n_per=40, separation=10.0, d=4):
    """Two Gaussian blobs separated by ``separation`` standard deviations."""
    a = rng.normal(0.0, 1.0, size=(n_per, d))
    b = rng.normal(0.0, 1.0, size=(n_per, d)) + separation
    X = np.vstack([a, b])
    y = np.array(["A"] * n_per + ["B"] * n_per)
    return X, y


def xor_clusters(rng, n_per=40, noise=0.15):
    centers = [(-1, -1), (1, 1), (-1, 1), (1, -1)]
    labels = ["P", "P", "Q", "Q"]
    xs, ys = [], []
    for (cx, cy), label in zip(centers, labels):
        xs.append(rng.normal((cx, cy), noise, size=(n_per, 2)))
        ys += [label] * n_per
    return np.vstack(xs), np.array(ys)


class TestBasics:
    def test_knn_single_training_point(self):
        clf = KNearestNeighbors(k=1).fit([[0.0, 0.0]], ["A"])
        pred = clf.predict([[5.0, -3.0], [0.1, 0.2]])
        assert pred.tolist() == ["A", "A"]

    def test_knn_training_set_exact_with_distinct_rows(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(30, 3))
        y = np.array([f"c{i % 5}" for i in range(30)])
        clf = KNearestNeighbors(k=1).fit(X, y)
        assert clf.predict(X).tolist() == y.tolist()

    def test_knn_vote_tie_uses_nearest(self):
        # three classes, one vote each: the closest neighbor decides
        X = [[0.0], [1.0], [2.0]]
        y = ["a", "b", "c"]
        clf = KNearestNeighbors(k=3).fit(X, y)
        assert clf.predict([[0.9]]).tolist() == ["b"]

    def test_nby_variance_floor_handles_constant_feature(self):
        X = np.array([[1.0, 5.0], [1.0, 6.0], [2.0, 1.0], [2.0, 2.0]])
        y = np.array(["u", "u", "v", "v"])
        clf = GaussianNaiveBayes().fit(X, y)
        assert np.all(clf.var_ >= 1e-9)
        assert clf.predict([[1.0, 5.5]]).tolist() == ["u"]

    @pytest.mark.parametrize("clf", ALL_CLASSIFIERS, ids=lambda c: type(c).__name__ + str(getattr(c, "k", "")))
    def test_blobs_are_trivial(self, clf):
        rng = np.random.default_rng(1)
        X, y = two_blobs(rng)
        holdout_X, holdout_y = two_blobs(np.random.default_rng(2))
        accuracy = (clf.fit(X, y).predict(holdout_X) == holdout_y).mean()
        assert accuracy == 1.0

    def test_xor_separability(self):
        rng = np.random.default_rng(4)
        X, y = xor_clusters(rng)
        svm_acc = (LinearSVM().fit(X, y).predict(X) == y).mean()
        assert svm_acc <= 0.75
        mlp = MultilayerPerceptron(hidden=20, lr=0.5, epochs=3000, seed=0)
        mlp_acc = (mlp.fit(X, y).predict(X) == y).mean()
        assert mlp_acc >= 0.95


class TestDeterminism:
    @pytest.mark.parametrize("clf", ALL_CLASSIFIERS, ids=lambda c: type(c).__name__ + str(getattr(c, "k", "")))
    def test_training_order_irrelevant(self, clf):
        rng = np.random.default_rng(10)
        X, y = two_blobs(rng, separation=2.0)
        test_X = rng.normal(1.0, 2.0, size=(25, X.shape[1]))
        base = clf.fit(X, y).predict(test_X)
        for seed in range(3):
            perm = np.random.default_rng(seed).permutation(len(y))
            again = clf.fit(X[perm], y[perm]).predict(test_X)
            assert again.tolist() == base.tolist()

    def test_mlp_seed_reproducible(self):
        rng = np.random.default_rng(12)
        X, y = two_blobs(rng, separation=1.0)
        a = MultilayerPerceptron(seed=7).fit(X, y)
        b = MultilayerPerceptron(seed=7).fit(X, y)
        assert np.array_equal(a.w1_, b.w1_) and np.array_equal(a.w2_, b.w2_)
        c = MultilayerPerceptron(seed=8).fit(X, y)
        assert not np.array_equal(a.w1_, c.w1_)

    def test_svm_refit_identical(self):
        rng = np.random.default_rng(13)
        X, y = two_blobs(rng, separation=1.5)
        a = LinearSVM().fit(X, y)
        b = LinearSVM().fit(X, y)
        assert np.array_equal(a.coef_, b.coef_)
        assert np.array_equal(a.intercept_, b.intercept_)


class TestEstimatorApi:
    def test_get_set_params_roundtrip(self):
        clf = MultilayerPerceptron(hidden=11, lr=0.2, epochs=9, seed=4)
        params = clf.get_params()
        assert params == {"hidden": 11, "lr": 0.2, "epochs": 9, "seed": 4}
        clf.set_params(hidden=5)
        assert clf.hidden == 5

    def test_sklearn_clone_compatible(self):
        from sklearn.base import clone

        for clf in ALL_CLASSIFIERS:
            cloned = clone(clf)
            assert cloned.get_params() == clf.get_params()

    def test_predict_before_fit_raises(self):
        from sklearn.exceptions import NotFittedError

        with pytest.raises(NotFittedError):
            KNearestNeighbors().predict([[1.0]])

    def test_three_class_problem(self):
        rng = np.random.default_rng(21)
        X = np.vstack([
            rng.normal((0, 0), 0.3, size=(20, 2)),
            rng.normal((6, 0), 0.3, size=(20, 2)),
            rng.normal((0, 6), 0.3, size=(20, 2)),
        ])
        y = np.array(["a"] * 20 + ["b"] * 20 + ["c"] * 20)
        for clf in ALL_CLASSIFIERS:
            assert (clf.fit(X, y).predict(X) == y).mean() == 1.0
