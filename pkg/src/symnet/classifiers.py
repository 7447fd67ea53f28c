"""Deterministic classifiers with the scikit-learn estimator API.

All four are written out in numpy rather than delegated, because the
evaluation protocol demands bit-reproducible training: given the same
data, hyperparameters and seed, every fit produces the same model on
any machine and any thread count. Training rows are put into a
canonical order before any arithmetic, so predictions are invariant
under permutations of the training set. The classes subclass
``BaseEstimator`` so ``get_params``/``set_params``, cloning and
pipeline composition work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

__all__ = [
    "KNearestNeighbors",
    "GaussianNaiveBayes",
    "LinearSVM",
    "MultilayerPerceptron",
]


def _canonical_order(X: np.ndarray, y_idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Sort rows by (class, features); identical inputs in any order then
    # produce bitwise-identical sums, gradients and tie-breaks.
    keys = tuple(X[:, j] for j in reversed(range(X.shape[1]))) + (y_idx,)
    order = np.lexsort(keys)
    return X[order], y_idx[order]


class KNearestNeighbors(BaseEstimator, ClassifierMixin):
    """Euclidean k-NN with majority vote.

    A vote tie goes to the label of the single nearest neighbor.
    Distance ties resolve by canonical training order.
    """

    def __init__(self, k: int = 1):
        self.k = k

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        self._X, self._y_idx = _canonical_order(X, y_idx)
        return self

    def predict(self, X):
        check_is_fitted(self, "_X")
        X = check_array(X, dtype=np.float64)
        diff = X[:, None, :] - self._X[None, :, :]
        dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        order = np.argsort(dist, axis=1, kind="stable")
        k = min(self.k, self._X.shape[0])
        out = np.empty(X.shape[0], dtype=int)
        for i in range(X.shape[0]):
            votes = np.bincount(self._y_idx[order[i, :k]], minlength=len(self.classes_))
            top = votes.max()
            if np.count_nonzero(votes == top) > 1:
                out[i] = self._y_idx[order[i, 0]]
            else:
                out[i] = int(np.argmax(votes))
        return self.classes_[out]


class GaussianNaiveBayes(BaseEstimator, ClassifierMixin):
    """Gaussian naive Bayes with a per-feature variance floor."""

    def __init__(self, var_floor: float = 1e-9):
        self.var_floor = var_floor

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        X, y_idx = _canonical_order(X, y_idx)
        n_classes = len(self.classes_)
        d = X.shape[1]
        self.theta_ = np.zeros((n_classes, d))
        self.var_ = np.zeros((n_classes, d))
        self.log_prior_ = np.zeros(n_classes)
        for c in range(n_classes):
            Xc = X[y_idx == c]
            self.theta_[c] = Xc.mean(axis=0)
            self.var_[c] = np.maximum(Xc.var(axis=0), self.var_floor)
            self.log_prior_[c] = np.log(Xc.shape[0] / X.shape[0])
        return self

    def _joint_log_likelihood(self, X):
        jll = np.empty((X.shape[0], len(self.classes_)))
        for c in range(len(self.classes_)):
            log_pdf = -0.5 * (
                np.log(2.0 * np.pi * self.var_[c])
                + (X - self.theta_[c]) ** 2 / self.var_[c]
            ).sum(axis=1)
            jll[:, c] = self.log_prior_[c] + log_pdf
        return jll

    def predict(self, X):
        check_is_fitted(self, "theta_")
        X = check_array(X, dtype=np.float64)
        return self.classes_[np.argmax(self._joint_log_likelihood(X), axis=1)]


class LinearSVM(BaseEstimator, ClassifierMixin):
    """Linear one-vs-rest SVM trained by full-batch subgradient descent.

    Minimizes hinge loss with L2 regularization (lambda = 1 / (c * n))
    using the 1/(lambda * t) step schedule and a norm projection after
    each epoch. The bias rides along as an appended constant feature.
    No sampling, no shuffling: the fit is a pure function of the data.
    """

    def __init__(self, c: float = 1.0, epochs: int = 200):
        self.c = c
        self.epochs = epochs

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        if self.c <= 0:
            raise ValueError(f"regularization constant must be > 0, got {self.c}")
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        X, y_idx = _canonical_order(X, y_idx)
        n, d = X.shape
        Xa = np.hstack([X, np.ones((n, 1))])
        lam = 1.0 / (self.c * n)
        radius = 1.0 / np.sqrt(lam)
        weights = np.zeros((len(self.classes_), d + 1))
        for c in range(len(self.classes_)):
            yb = np.where(y_idx == c, 1.0, -1.0)
            w = np.zeros(d + 1)
            for t in range(1, self.epochs + 1):
                margins = yb * (Xa @ w)
                viol = margins < 1.0
                grad = lam * w - (yb[viol, None] * Xa[viol]).sum(axis=0) / n
                w -= grad / (lam * t)
                norm = np.linalg.norm(w)
                if norm > radius:
                    w *= radius / norm
            weights[c] = w
        self.coef_ = weights[:, :-1]
        self.intercept_ = weights[:, -1]
        return self

    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=np.float64)
        return X @ self.coef_.T + self.intercept_

    def predict(self, X):
        scores = self.decision_function(X)
        return self.classes_[np.argmax(scores, axis=1)]


class MultilayerPerceptron(BaseEstimator, ClassifierMixin):
    """One-hidden-layer perceptron: logistic hidden units, softmax
    output, cross-entropy loss, full-batch gradient descent, seeded
    Xavier-uniform initialization."""

    def __init__(self, hidden: int = 20, lr: float = 0.01, epochs: int = 500, seed: int = 0):
        self.hidden = hidden
        self.lr = lr
        self.epochs = epochs
        self.seed = seed

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        X, y_idx = _canonical_order(X, y_idx)
        n, d = X.shape
        k = len(self.classes_)
        rng = np.random.default_rng(self.seed)
        limit1 = np.sqrt(6.0 / (d + self.hidden))
        limit2 = np.sqrt(6.0 / (self.hidden + k))
        w1 = rng.uniform(-limit1, limit1, size=(d, self.hidden))
        b1 = np.zeros(self.hidden)
        w2 = rng.uniform(-limit2, limit2, size=(self.hidden, k))
        b2 = np.zeros(k)
        onehot = np.zeros((n, k))
        onehot[np.arange(n), y_idx] = 1.0

        for _ in range(self.epochs):
            hidden = _sigmoid(X @ w1 + b1)
            probs = _softmax(hidden @ w2 + b2)
            delta_out = (probs - onehot) / n
            grad_w2 = hidden.T @ delta_out
            grad_b2 = delta_out.sum(axis=0)
            delta_hidden = (delta_out @ w2.T) * hidden * (1.0 - hidden)
            grad_w1 = X.T @ delta_hidden
            grad_b1 = delta_hidden.sum(axis=0)
            w1 -= self.lr * grad_w1
            b1 -= self.lr * grad_b1
            w2 -= self.lr * grad_w2
            b2 -= self.lr * grad_b2

        self.w1_, self.b1_, self.w2_, self.b2_ = w1, b1, w2, b2
        return self

    def decision_function(self, X):
        check_is_fitted(self, "w1_")
        X = check_array(X, dtype=np.float64)
        return _sigmoid(X @ self.w1_ + self.b1_) @ self.w2_ + self.b2_

    def predict(self, X):
        return self.classes_[np.argmax(self.decision_function(X), axis=1)]


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    ez = np.exp(shifted)
    return ez / ez.sum(axis=1, keepdims=True)
