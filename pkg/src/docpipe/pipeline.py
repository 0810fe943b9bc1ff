"""End-to-end wiring: page image -> blobs -> features -> model -> text -> report.

Also hosts the synthetic replication run used by the acceptance suite: a
rendered 26x12 training sheet plus a 61-word test page, optionally degraded
with salt-and-pepper noise and per-glyph jitter.
"""

from __future__ import annotations

import numpy as np

from . import fonts, imaging, segmentation, textdiff
from .errors import UnlabeledBlob
from .features import TrainingSet, extract_features
from .ocr import Hyperparams, OcrModel, predict, train_logreg
from .segmentation import BlobManifest, GridConfig

DEFAULT_ALPHABET = fonts.ALPHABET

# 61 words of letters-only uppercase text; ground truth for the synthetic run
SYNTHETIC_TEST_TEXT = "\n".join(
    [
        "MACHINE LEARNING METHODS HELP COMPUTERS READ SCANNED PAGES AND SORT THE WORDS THEY FIND",
        "A SCANNER TURNS PAPER SHEETS INTO DIGITAL IMAGES AND EACH LETTER BECOMES A SMALL BLOCK",
        "THE PROGRAM LEARNS EVERY SHAPE FROM A TRAINING GRID AND THEN READS NEW PAGES ALONE",
        "AT THE END THE TEXT IS CHECKED AGAINST THE ORIGINAL AND EVERY MATCH IS COUNTED AS WELL",
    ]
)


def preprocess(raster: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Raster page -> (grayscale, binary ink mask)."""
    gray = imaging.to_grayscale(raster)
    binary, _ = imaging.binarize_otsu(gray)
    return gray, binary


def segment_page(
    raster: np.ndarray,
    image_path: str,
    min_area: int = 15,
    grid: GridConfig | None = None,
) -> BlobManifest:
    """Detect blobs on a page; label them from the grid layout when given."""
    gray, binary = preprocess(raster)
    blobs = segmentation.find_blobs(binary, min_area=min_area)
    if grid is not None and blobs:
        blobs = segmentation.assign_grid_labels(blobs, grid)
    h, w = gray.shape
    return BlobManifest(
        image_path=image_path, image_w=w, image_h=h, blobs=tuple(blobs)
    )


def manifest_to_training_set(
    manifest: BlobManifest,
    raster: np.ndarray,
    alphabet: str = DEFAULT_ALPHABET,
) -> TrainingSet:
    """Extract one labeled feature row per blob; refuses unlabeled blobs."""
    unlabeled = [b.id for b in manifest.blobs if b.label is None]
    if unlabeled:
        raise UnlabeledBlob(unlabeled)
    gray, binary = preprocess(raster)
    rows = [extract_features(gray, binary, b) for b in manifest.blobs]
    labels = [alphabet.index(b.label) for b in manifest.blobs]
    X = np.array(rows) if rows else np.empty((0, 1200))
    return TrainingSet(X=X, y=np.array(labels, dtype=int), alphabet=alphabet)


def recognize_page(
    raster: np.ndarray,
    model: OcrModel,
    min_area: int = 15,
    space_factor: float = 0.5,
) -> str:
    """Segment a page and read it with the model, assembling lines and spaces."""
    gray, binary = preprocess(raster)
    blobs = segmentation.find_blobs(binary, min_area=min_area)
    chars = {b.id: predict(model, extract_features(gray, binary, b)).label for b in blobs}
    lines = textdiff.order_blobs_into_lines(blobs)
    return textdiff.render_text(lines, chars, space_factor=space_factor)


def gray_to_raster(gray: np.ndarray) -> np.ndarray:
    return np.repeat(gray[:, :, None], 3, axis=2)


def run_synthetic_pipeline(
    noise_p: float = 0.0,
    jitter: int = 0,
    hp: Hyperparams = Hyperparams(),
    seed: int = 1234,
    test_text: str = SYNTHETIC_TEST_TEXT,
) -> dict:
    """Render sheet + test page, train, recognize, and score in one shot."""
    rng = np.random.default_rng(seed)
    sheet = fonts.render_training_sheet()
    # degradation hits the test page only; the training sheet is the fixed,
    # clean setup shared by both regimes
    page = fonts.render_text_page(test_text, jitter=jitter, rng=rng)
    if noise_p > 0:
        page = fonts.add_salt_pepper(page, noise_p, rng)
    grid = GridConfig()
    manifest = segment_page(gray_to_raster(sheet), "training-sheet", grid=grid)
    ts = manifest_to_training_set(manifest, gray_to_raster(sheet))
    model = train_logreg(ts, hp)
    ocr_text = recognize_page(gray_to_raster(page), model)
    report = textdiff.compare_texts(test_text, ocr_text)
    return {
        "n_training_blobs": len(manifest.blobs),
        "ocr_text": ocr_text,
        "report": report,
        "char_match_pct": report.char_match_pct,
        "model": model,
    }
