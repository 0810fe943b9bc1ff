"""Character classifier: one-vs-all logistic regression via batch gradient
descent, plus a nearest-centroid baseline.

Model JSON: {"kind": "logreg"|"centroid", "alphabet": str, "rows": [[...], ...]}.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyClass
from .features import TrainingSet

SIGMOID_EPS = 1e-12


@dataclass(frozen=True)
class Hyperparams:
    learning_rate: float = 0.5
    iterations: int = 400
    l2_lambda: float = 0.1

    def __post_init__(self):
        if self.learning_rate <= 0 or self.iterations < 1 or self.l2_lambda < 0:
            raise ValueError("bad hyperparameters")


@dataclass(frozen=True)
class OcrModel:
    kind: str  # "logreg" or "centroid"
    alphabet: str
    rows: np.ndarray  # logreg: (n, 1201) with bias first; centroid: (n, 1200)

    def __post_init__(self):
        if self.rows.shape[0] != len(self.alphabet):
            raise ValueError("row count must match alphabet length")
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("non-finite model weights")


@dataclass(frozen=True)
class Prediction:
    label: str
    scores: np.ndarray


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def logreg_cost_grad(theta, X, y, lam):
    """Regularized binary cross-entropy cost and its gradient.

    The bias component (index 0) is not regularized; the log arguments are
    clamped to [1e-12, 1 - 1e-12].
    """
    theta = np.asarray(theta, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != theta.shape[0] or X.shape[0] != y.shape[0]:
        raise DimensionMismatch(
            f"theta {theta.shape}, X {X.shape}, y {y.shape} do not agree"
        )
    m = X.shape[0]
    h = sigmoid(X @ theta)
    hc = np.clip(h, SIGMOID_EPS, 1.0 - SIGMOID_EPS)
    cost = -(y @ np.log(hc) + (1.0 - y) @ np.log(1.0 - hc)) / m
    cost += lam / (2.0 * m) * (theta[1:] @ theta[1:])
    grad = X.T @ (h - y) / m
    grad[1:] += lam / m * theta[1:]
    return cost, grad


def _check_classes(ts: TrainingSet):
    counts = np.bincount(ts.y, minlength=len(ts.alphabet)) if len(ts) else np.zeros(len(ts.alphabet))
    missing = [ts.alphabet[i] for i in range(len(ts.alphabet)) if counts[i] == 0]
    if missing:
        raise EmptyClass(f"no training samples for: {''.join(missing)}")


def train_logreg(ts: TrainingSet, hp: Hyperparams = Hyperparams()) -> OcrModel:
    """Train one regularized logistic unit per letter (class vs rest), each with
    exactly hp.iterations full-batch gradient steps from zero weights."""
    _check_classes(ts)
    m = len(ts)
    Xb = np.hstack([np.ones((m, 1)), ts.X])
    n_classes = len(ts.alphabet)
    weights = np.zeros((n_classes, Xb.shape[1]))
    for c in range(n_classes):
        y = (ts.y == c).astype(np.float64)
        theta = np.zeros(Xb.shape[1])
        for _ in range(hp.iterations):
            _, grad = logreg_cost_grad(theta, Xb, y, hp.l2_lambda)
            theta = theta - hp.learning_rate * grad
        weights[c] = theta
    return OcrModel(kind="logreg", alphabet=ts.alphabet, rows=weights)


def train_centroid(ts: TrainingSet) -> OcrModel:
    _check_classes(ts)
    centroids = np.vstack(
        [ts.X[ts.y == c].mean(axis=0) for c in range(len(ts.alphabet))]
    )
    return OcrModel(kind="centroid", alphabet=ts.alphabet, rows=centroids)


def predict(model: OcrModel, fv: np.ndarray) -> Prediction:
    """Classify one feature vector; argmax ties go to the lowest class index."""
    fv = np.asarray(fv, dtype=np.float64)
    expected = model.rows.shape[1] - (1 if model.kind == "logreg" else 0)
    if fv.shape != (expected,):
        raise DimensionMismatch(f"feature vector shape {fv.shape}, expected ({expected},)")
    if model.kind == "logreg":
        scores = sigmoid(model.rows @ np.concatenate([[1.0], fv]))
    else:
        scores = -np.linalg.norm(model.rows - fv[None, :], axis=1)
    return Prediction(label=model.alphabet[int(np.argmax(scores))], scores=scores)


def evaluate_ocr(model: OcrModel, ts: TrainingSet) -> float:
    """Fraction of samples predicted correctly; 0.0 with a warning when empty."""
    if len(ts) == 0:
        warnings.warn("evaluate_ocr called on an empty set; accuracy defined as 0.0")
        return 0.0
    correct = sum(
        predict(model, row).label == ts.alphabet[label] for row, label in zip(ts.X, ts.y)
    )
    return correct / len(ts)


def save_model(model: OcrModel, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(
            {"kind": model.kind, "alphabet": model.alphabet, "rows": model.rows.tolist()},
            f,
        )
        f.write("\n")


def load_model(path) -> OcrModel:
    with open(path, encoding="utf-8") as f:
        d = json.load(f)
    return OcrModel(kind=d["kind"], alphabet=d["alphabet"], rows=np.array(d["rows"]))
