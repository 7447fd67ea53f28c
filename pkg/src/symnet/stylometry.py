"""Authorship attribution from per-word symmetry features.

Every word shared by all books becomes one feature column; its value in
a row is the word's symmetry in that book's adjacency network. Books
are classified by leave-one-out cross-validation: each fold standardizes
features with the training rows only, trains a deterministic classifier
and predicts the held-out book.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classifiers import (
    GaussianNaiveBayes,
    KNearestNeighbors,
    LinearSVM,
    MultilayerPerceptron,
)
from .concentric import Kind, symmetry_all
from .wan import WordNetwork, shared_vocabulary

__all__ = [
    "CLASSIFIER_KINDS",
    "FeatureMatrix",
    "ClassifierSpec",
    "EvaluationReport",
    "make_classifier",
    "build_features",
    "combine_features",
    "standardize",
    "train_predict",
    "loocv",
    "binomial_p_value",
]

CLASSIFIER_KINDS = ("svm", "mlp", "knn", "nby")


@dataclass
class FeatureMatrix:
    """Books-by-words matrix of symmetry values with author labels.

    Column order is deterministic (lexicographic lemmas, then level for
    combined matrices) and no entry is undefined: a shared word that is
    isolated in any single book takes its whole column out.
    """

    book_ids: list[str]
    authors: list[str]
    columns: list[str]
    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass
class ClassifierSpec:
    """Which classifier to train and with what hyperparameters."""

    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "seed": self.seed}


@dataclass
class EvaluationReport:
    """Outcome of a cross-validated attribution run."""

    accuracy: float
    predictions: list[tuple[str, str, str]]  # (book_id, true author, predicted)
    author_order: list[str]
    confusion: np.ndarray  # rows: true author, cols: predicted
    p_value: float
    spec: ClassifierSpec

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "predictions": [
                {"book_id": b, "author": t, "predicted": p} for b, t, p in self.predictions
            ],
            "author_order": list(self.author_order),
            "confusion": self.confusion.tolist(),
            "p_value": self.p_value,
            "spec": self.spec.to_dict(),
        }


def make_classifier(spec: ClassifierSpec):
    """Instantiate the estimator a spec describes."""
    params = dict(spec.params)
    if spec.kind == "knn":
        return KNearestNeighbors(k=int(params.pop("k", 1)), **params)
    if spec.kind == "nby":
        return GaussianNaiveBayes(**params)
    if spec.kind == "svm":
        return LinearSVM(c=float(params.pop("c", 1.0)),
                         epochs=int(params.pop("epochs", 200)), **params)
    if spec.kind == "mlp":
        return MultilayerPerceptron(
            hidden=int(params.pop("hidden", 20)),
            lr=float(params.pop("lr", 0.01)),
            epochs=int(params.pop("epochs", 500)),
            seed=int(params.pop("seed", spec.seed)),
            **params,
        )
    raise ValueError(f"unknown classifier kind {spec.kind!r}; choose from {CLASSIFIER_KINDS}")


def build_features(networks: Sequence[WordNetwork], book_ids: Sequence[str],
                   authors: Sequence[str], kind: Kind, h: int,
                   threads: int | None = None) -> FeatureMatrix:
    """Assemble the books-by-shared-words symmetry matrix.

    Raw symmetry values go in as-is; z-scoring happens per training fold
    inside :func:`train_predict`, never here.
    """
    if not (len(networks) == len(book_ids) == len(authors)):
        raise ValueError("networks, book_ids and authors must align")
    if len(networks) < 2:
        raise ValueError("need at least 2 books")
    if len(set(authors)) < 2:
        raise ValueError("need at least 2 authors")
    shared = shared_vocabulary(networks)
    if not shared:
        raise ValueError("no shared vocabulary across the corpus")

    matrix = np.empty((len(networks), len(shared)))
    defined = np.ones(len(shared), dtype=bool)
    for row, net in enumerate(networks):
        sym = symmetry_all(net, h, kind, threads=threads)
        for col, lemma in enumerate(shared):
            value = sym[net.lemma_ids[lemma]]
            if value.defined:
                matrix[row, col] = value.value
            else:
                defined[col] = False
    if not defined.any():
        raise ValueError("every shared word is isolated in some book; no usable features")
    columns = [lemma for lemma, keep in zip(shared, defined) if keep]
    return FeatureMatrix(list(book_ids), list(authors), columns, matrix[:, defined])


def combine_features(matrices: Sequence[FeatureMatrix],
                     suffixes: Sequence[str] | None = None) -> FeatureMatrix:
    """Concatenate per-level feature matrices column-wise.

    With more than one matrix, column labels take a ``:<suffix>`` tag
    (defaulting to the matrix position) to stay unique. A single matrix
    passes through untouched.
    """
    if not matrices:
        raise ValueError("nothing to combine")
    first = matrices[0]
    for m in matrices[1:]:
        if m.book_ids != first.book_ids or m.authors != first.authors:
            raise ValueError("feature matrices describe different corpora")
    if len(matrices) == 1:
        return first
    if suffixes is None:
        suffixes = [str(i) for i in range(len(matrices))]
    if len(suffixes) != len(matrices):
        raise ValueError("need one suffix per matrix")
    columns = []
    for suffix, m in zip(suffixes, matrices):
        columns.extend(f"{c}:{suffix}" for c in m.columns)
    values = np.hstack([m.values for m in matrices])
    return FeatureMatrix(list(first.book_ids), list(first.authors), columns, values)


def standardize(train_X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column mean and scale from training rows only; zero-variance
    columns get scale 1 so they pass through unscaled."""
    mean = train_X.mean(axis=0)
    scale = train_X.std(axis=0)
    scale[scale == 0.0] = 1.0
    return mean, scale


def train_predict(spec: ClassifierSpec, train_X: np.ndarray, train_y: Sequence[str],
                  test_X: np.ndarray) -> np.ndarray:
    """Standardize on the training fold, fit, predict the test rows."""
    train_X = np.asarray(train_X, dtype=float)
    test_X = np.asarray(test_X, dtype=float)
    if train_X.shape[0] == 0:
        raise ValueError("empty training set")
    if train_X.shape[1] != test_X.shape[1]:
        raise ValueError(
            f"feature dimension mismatch: train {train_X.shape[1]}, test {test_X.shape[1]}")
    mean, scale = standardize(train_X)
    clf = make_classifier(spec)
    clf.fit((train_X - mean) / scale, np.asarray(train_y))
    return clf.predict((test_X - mean) / scale)


def loocv(spec: ClassifierSpec, features: FeatureMatrix) -> EvaluationReport:
    """Leave-one-out evaluation over books."""
    n = len(features.book_ids)
    if n < 2:
        raise ValueError("leave-one-out needs at least 2 books")
    authors = np.asarray(features.authors)
    author_order = sorted(set(features.authors))
    author_idx = {a: i for i, a in enumerate(author_order)}
    confusion = np.zeros((len(author_order), len(author_order)), dtype=int)
    predictions: list[tuple[str, str, str]] = []
    correct = 0
    for i in range(n):
        mask = np.ones(n, dtype=bool)
        mask[i] = False
        pred = train_predict(spec, features.values[mask], authors[mask],
                             features.values[~mask])[0]
        truth = features.authors[i]
        predictions.append((features.book_ids[i], truth, str(pred)))
        confusion[author_idx[truth], author_idx[str(pred)]] += 1
        if str(pred) == truth:
            correct += 1
    p_value = binomial_p_value(correct, n, 1.0 / len(author_order))
    return EvaluationReport(correct / n, predictions, author_order, confusion, p_value, spec)


def binomial_p_value(correct: int, n: int, chance: float) -> float:
    """Upper-tail binomial probability P[X >= correct], X ~ B(n, chance).

    Summed in log space so tail masses far below float underflow of a
    naive product still come out right.
    """
    if not 0 <= correct <= n:
        raise ValueError(f"need 0 <= correct <= n, got correct={correct}, n={n}")
    if not 0.0 < chance < 1.0:
        raise ValueError(f"chance must be in (0, 1), got {chance}")
    if correct == 0:
        return 1.0
    log_terms = []
    log_p = math.log(chance)
    log_q = math.log1p(-chance)
    for k in range(correct, n + 1):
        log_c = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        log_terms.append(log_c + k * log_p + (n - k) * log_q)
    top = max(log_terms)
    total = top + math.log(sum(math.exp(t - top) for t in log_terms))
    return min(1.0, math.exp(total))
