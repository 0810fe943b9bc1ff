"""Connected-component blob detection, grid labeling, and manifest persistence.

The manifest JSON schema doubles as the review service's wire format:
{"image_path": str, "image_w": int, "image_h": int,
 "blobs": [{"id": int, "x": int, "y": int, "w": int, "h": int, "label": str|null}]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import ndimage

from .errors import GridMismatch, OutOfBounds, SchemaError, UnknownBlobId

EIGHT_CONNECTED = np.ones((3, 3), dtype=int)


@dataclass(frozen=True)
class Blob:
    id: int
    x: int
    y: int
    w: int
    h: int
    label: str | None = None

    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)


@dataclass(frozen=True)
class BlobManifest:
    image_path: str
    image_w: int
    image_h: int
    blobs: tuple[Blob, ...] = ()

    def __post_init__(self):
        ids = [b.id for b in self.blobs]
        if len(ids) != len(set(ids)):
            raise SchemaError("duplicate blob ids")
        for b in self.blobs:
            _check_bounds(b, self.image_w, self.image_h)


@dataclass(frozen=True)
class GridConfig:
    n_letters: int = 26
    n_samples: int = 12
    orientation: str = "letters-along-columns"  # or "letters-along-rows"
    alphabet: str = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

    def __post_init__(self):
        if len(self.alphabet) != self.n_letters:
            raise ValueError("alphabet length must equal n_letters")
        if self.orientation not in ("letters-along-columns", "letters-along-rows"):
            raise ValueError(f"bad orientation {self.orientation!r}")


def _check_bounds(b: Blob, image_w: int, image_h: int):
    if b.w < 1 or b.h < 1:
        raise OutOfBounds(f"blob {b.id}: degenerate box {b.w}x{b.h}")
    if b.x < 0 or b.y < 0 or b.x + b.w > image_w or b.y + b.h > image_h:
        raise OutOfBounds(f"blob {b.id}: box outside {image_w}x{image_h} page")


def find_blobs(binary: np.ndarray, min_area: int = 15) -> list[Blob]:
    """One blob per 8-connected ink component with at least min_area pixels.

    Sorted by (y, x) of the bounding-box corner; ids assigned in that order.
    """
    if min_area < 1:
        raise ValueError("min_area must be >= 1")
    binary = np.asarray(binary)
    labels, n = ndimage.label(binary, structure=EIGHT_CONNECTED)
    if n == 0:
        return []
    areas = ndimage.sum_labels(binary, labels, index=np.arange(1, n + 1))
    boxes = []
    for i, sl in enumerate(ndimage.find_objects(labels)):
        if areas[i] < min_area:
            continue
        ys, xs = sl
        boxes.append((ys.start, xs.start, xs.stop - xs.start, ys.stop - ys.start))
    boxes.sort()
    return [Blob(id=i, x=x, y=y, w=w, h=h) for i, (y, x, w, h) in enumerate(boxes)]


def _kmeans_1d(values: np.ndarray, k: int, iters: int = 50) -> np.ndarray:
    """1-D k-means with centers initialized evenly over the value range.

    Returns the cluster index of each value, clusters numbered in
    ascending center order.
    """
    lo, hi = float(values.min()), float(values.max())
    centers = np.linspace(lo, hi, k) if k > 1 else np.array([(lo + hi) / 2.0])
    for _ in range(iters):
        assign = np.argmin(np.abs(values[:, None] - centers[None, :]), axis=1)
        for c in range(k):
            members = values[assign == c]
            if len(members):
                centers[c] = members.mean()
    order = np.argsort(centers, kind="stable")
    rank = np.empty(k, dtype=int)
    rank[order] = np.arange(k)
    assign = np.argmin(np.abs(values[:, None] - centers[None, :]), axis=1)
    return rank[assign]


def assign_grid_labels(blobs: list[Blob], cfg: GridConfig) -> list[Blob]:
    """Cluster blob centers into n_letters bands along the grid axis and label
    each band with the alphabet letter of its rank."""
    if not blobs:
        raise GridMismatch("no blobs to label")
    if len(blobs) > cfg.n_letters * cfg.n_samples:
        raise GridMismatch(
            f"{len(blobs)} blobs exceed {cfg.n_letters}x{cfg.n_samples} grid"
        )
    axis = 0 if cfg.orientation == "letters-along-columns" else 1
    coords = np.array([b.center()[axis] for b in blobs])
    bands = _kmeans_1d(coords, cfg.n_letters)
    found = len(set(bands.tolist()))
    if found != cfg.n_letters:
        raise GridMismatch(f"found {found} bands, expected {cfg.n_letters}")
    return [replace(b, label=cfg.alphabet[band]) for b, band in zip(blobs, bands)]


def manifest_to_dict(m: BlobManifest) -> dict:
    return {
        "image_path": m.image_path,
        "image_w": m.image_w,
        "image_h": m.image_h,
        "blobs": [
            {"id": b.id, "x": b.x, "y": b.y, "w": b.w, "h": b.h, "label": b.label}
            for b in m.blobs
        ],
    }


def manifest_from_dict(d: dict) -> BlobManifest:
    if not isinstance(d, dict):
        raise SchemaError("manifest must be a JSON object")
    for key in ("image_path", "image_w", "image_h", "blobs"):
        if key not in d:
            raise SchemaError(f"missing required field {key!r}")
    if not isinstance(d["blobs"], list):
        raise SchemaError("blobs must be a list")
    blobs = []
    for entry in d["blobs"]:
        if not isinstance(entry, dict):
            raise SchemaError("blob entries must be objects")
        try:
            blobs.append(
                Blob(
                    id=int(entry["id"]),
                    x=int(entry["x"]),
                    y=int(entry["y"]),
                    w=int(entry["w"]),
                    h=int(entry["h"]),
                    label=entry.get("label"),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad blob entry: {exc}") from exc
    for b in blobs:
        if b.label is not None and not (isinstance(b.label, str) and len(b.label) == 1):
            raise SchemaError(f"blob {b.id}: label must be a single character or null")
    try:
        return BlobManifest(
            image_path=str(d["image_path"]),
            image_w=int(d["image_w"]),
            image_h=int(d["image_h"]),
            blobs=tuple(blobs),
        )
    except OutOfBounds as exc:
        raise SchemaError(str(exc)) from exc


def save_manifest(m: BlobManifest, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(manifest_to_dict(m), f, indent=2)
        f.write("\n")


def load_manifest(path) -> BlobManifest:
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    return manifest_from_dict(data)


def apply_blob_edit(m: BlobManifest, edit: dict) -> BlobManifest:
    """Apply one review edit and return the updated manifest.

    edit forms:
      {"op": "update", "id": i, "x":..,"y":..,"w":..,"h":.., "label":?}
      {"op": "delete", "id": i}
      {"op": "create", "x":..,"y":..,"w":..,"h":.., "label":?}
    """
    op = edit.get("op")
    if op == "delete":
        target = edit["id"]
        if not any(b.id == target for b in m.blobs):
            raise UnknownBlobId(f"no blob with id {target}")
        return replace(m, blobs=tuple(b for b in m.blobs if b.id != target))
    if op == "update":
        target = edit["id"]
        if not any(b.id == target for b in m.blobs):
            raise UnknownBlobId(f"no blob with id {target}")
        new_blobs = []
        for b in m.blobs:
            if b.id == target:
                b = replace(
                    b,
                    x=int(edit.get("x", b.x)),
                    y=int(edit.get("y", b.y)),
                    w=int(edit.get("w", b.w)),
                    h=int(edit.get("h", b.h)),
                    label=edit["label"] if "label" in edit else b.label,
                )
                _check_bounds(b, m.image_w, m.image_h)
            new_blobs.append(b)
        return replace(m, blobs=tuple(new_blobs))
    if op == "create":
        used = {b.id for b in m.blobs}
        new_id = 0
        while new_id in used:
            new_id += 1
        b = Blob(
            id=new_id,
            x=int(edit["x"]),
            y=int(edit["y"]),
            w=int(edit["w"]),
            h=int(edit["h"]),
            label=edit.get("label"),
        )
        _check_bounds(b, m.image_w, m.image_h)
        return replace(m, blobs=m.blobs + (b,))
    raise ValueError(f"unknown edit op {op!r}")
