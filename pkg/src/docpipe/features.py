"""Per-blob feature vectors and the three-line-per-blob training text file.

A feature vector is 1200 values in [0, 1]: three concatenated 20x20 planes
(normal grayscale, binarized-as-gray, inverted-as-gray), each row-major.
The text file holds one line per plane: 400 six-decimal values followed by
the integer class label, repeated on all three lines of a sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormatError, OutOfBounds
from .imaging import resize_area_average
from .segmentation import Blob

PLANE_SIDE = 20
PLANE_SIZE = PLANE_SIDE * PLANE_SIDE
FEATURE_DIM = 3 * PLANE_SIZE


@dataclass(frozen=True)
class TrainingSet:
    X: np.ndarray  # (m, 1200) float64
    y: np.ndarray  # (m,) int labels, indices into alphabet
    alphabet: str

    def __post_init__(self):
        if self.X.shape[0] != self.y.shape[0]:
            raise ValueError("X and y row counts differ")
        if self.X.size and self.X.shape[1] != FEATURE_DIM:
            raise ValueError(f"X must have {FEATURE_DIM} columns")
        if self.y.size and (self.y.min() < 0 or self.y.max() >= len(self.alphabet)):
            raise ValueError("labels outside alphabet range")

    def __len__(self):
        return self.X.shape[0]


def _plane(gray_crop: np.ndarray) -> np.ndarray:
    resized = resize_area_average(gray_crop, PLANE_SIDE, PLANE_SIDE)
    return resized.astype(np.float64).ravel() / 255.0


def extract_features(gray: np.ndarray, binary: np.ndarray, blob: Blob) -> np.ndarray:
    """Concatenate the normal / binarized / inverted 20x20 planes of one blob."""
    h, w = gray.shape
    if blob.x < 0 or blob.y < 0 or blob.x + blob.w > w or blob.y + blob.h > h:
        raise OutOfBounds(f"blob {blob.id} outside {w}x{h} page")
    ys = slice(blob.y, blob.y + blob.h)
    xs = slice(blob.x, blob.x + blob.w)
    gray_crop = gray[ys, xs]
    bin_crop = binary[ys, xs]
    # ink (1) renders as black (0), background as white (255)
    bin_as_gray = (1 - bin_crop).astype(np.uint8) * 255
    inv_as_gray = bin_crop.astype(np.uint8) * 255
    return np.concatenate([_plane(gray_crop), _plane(bin_as_gray), _plane(inv_as_gray)])


def write_training_file(ts: TrainingSet, path):
    """Three lines per sample, 400 six-decimal values plus the label on each."""
    with open(path, "w", encoding="ascii", newline="") as f:
        for row, label in zip(ts.X, ts.y):
            for p in range(3):
                plane = row[p * PLANE_SIZE : (p + 1) * PLANE_SIZE]
                values = " ".join(f"{v:.6f}" for v in plane)
                f.write(f"{values} {int(label)}\n")


def read_training_file(path, alphabet: str = "ABCDEFGHIJKLMNOPQRSTUVWXYZ") -> TrainingSet:
    with open(path, encoding="ascii") as f:
        lines = [ln for ln in f.read().split("\n") if ln != ""]
    if len(lines) % 3 != 0:
        raise FormatError(f"{path}: line count {len(lines)} not divisible by 3")
    rows, labels = [], []
    for s in range(0, len(lines), 3):
        planes, triple_labels = [], []
        for line in lines[s : s + 3]:
            tokens = line.split()
            if len(tokens) != PLANE_SIZE + 1:
                raise FormatError(
                    f"{path}: line {s}: expected {PLANE_SIZE + 1} tokens, got {len(tokens)}"
                )
            try:
                planes.append(np.array([float(t) for t in tokens[:-1]]))
                triple_labels.append(int(tokens[-1]))
            except ValueError as exc:
                raise FormatError(f"{path}: line {s}: {exc}") from exc
        if len(set(triple_labels)) != 1:
            raise FormatError(f"{path}: sample {s // 3}: labels differ across its lines")
        rows.append(np.concatenate(planes))
        labels.append(triple_labels[0])
    X = np.array(rows) if rows else np.empty((0, FEATURE_DIM))
    y = np.array(labels, dtype=int)
    return TrainingSet(X=X, y=y, alphabet=alphabet)
