"""Image loading and the three preprocessing variants: grayscale, binarized, inverted.

Images are numpy arrays throughout:
  raster  -- (h, w, 3) uint8 RGB
  gray    -- (h, w) uint8 luminance
  binary  -- (h, w) uint8 with 1 = ink, 0 = background
"""

from __future__ import annotations

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptImage, UnsupportedFormat


def round_half_up(x: np.ndarray) -> np.ndarray:
    """Round to nearest integer with halves going up (numpy's default rounds to even)."""
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5)


def load_image(path) -> np.ndarray:
    """Decode a PNG or JPEG file into an (h, w, 3) uint8 RGB array."""
    try:
        with Image.open(path) as im:
            if im.format not in ("PNG", "JPEG"):
                raise UnsupportedFormat(f"{path}: format {im.format} not supported")
            rgb = im.convert("RGB")
            arr = np.asarray(rgb, dtype=np.uint8)
    except FileNotFoundError:
        raise
    except UnsupportedFormat:
        raise
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise CorruptImage(f"{path}: {exc}") from exc
    return arr


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """BT.601 luminance: Y = 0.299 R + 0.587 G + 0.114 B, rounded half-up."""
    img = np.asarray(img, dtype=np.float64)
    y = 0.299 * img[..., 0] + 0.587 * img[..., 1] + 0.114 * img[..., 2]
    return round_half_up(y).astype(np.uint8)


def otsu_threshold(hist: np.ndarray) -> int:
    """Threshold t maximizing between-class variance of {gray <= t} vs {gray > t}.

    Ties go to the smallest t. A single-bin histogram yields 0.
    """
    hist = np.asarray(hist, dtype=np.float64)
    total = hist.sum()
    if np.count_nonzero(hist) <= 1:
        return 0
    levels = np.arange(256, dtype=np.float64)
    w0 = np.cumsum(hist)
    sum0 = np.cumsum(hist * levels)
    mu_total = sum0[-1]
    w1 = total - w0
    # between-class variance; undefined (0) where either class is empty
    with np.errstate(divide="ignore", invalid="ignore"):
        mu0 = sum0 / w0
        mu1 = (mu_total - sum0) / w1
        sigma_b = w0 * w1 * (mu0 - mu1) ** 2
    sigma_b = np.nan_to_num(sigma_b, nan=0.0)
    return int(np.argmax(sigma_b))


def binarize_otsu(gray: np.ndarray) -> tuple[np.ndarray, int]:
    """Binarize with Otsu's threshold; ink (1) where gray <= t.

    A uniform image maps to all background with t = 0, so blank pages are
    not declared all-ink.
    """
    gray = np.asarray(gray, dtype=np.uint8)
    if gray.size == 0:
        raise ValueError("empty image")
    hist = np.bincount(gray.ravel(), minlength=256)
    if np.count_nonzero(hist) <= 1:
        return np.zeros_like(gray), 0
    t = otsu_threshold(hist)
    return (gray <= t).astype(np.uint8), t


def invert(binary: np.ndarray) -> np.ndarray:
    """Flip every pixel of a binary image."""
    return (1 - np.asarray(binary, dtype=np.uint8)).astype(np.uint8)


def _overlap_weights(n_in: int, n_out: int) -> np.ndarray:
    """(n_out, n_in) matrix of fractional interval overlaps, rows summing to 1."""
    scale = n_in / n_out
    w = np.zeros((n_out, n_in), dtype=np.float64)
    for o in range(n_out):
        lo, hi = o * scale, (o + 1) * scale
        i0, i1 = int(np.floor(lo)), int(np.ceil(hi))
        for i in range(i0, min(i1, n_in)):
            w[o, i] = min(hi, i + 1) - max(lo, i)
    return w / w.sum(axis=1, keepdims=True)


def resize_area_average(gray: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Resize by coverage-weighted averaging; each output pixel is the mean of
    the source rectangle it back-projects onto, rounded half-up."""
    if out_w < 1 or out_h < 1:
        raise ValueError("output dimensions must be >= 1")
    gray = np.asarray(gray, dtype=np.float64)
    h, w = gray.shape
    wy = _overlap_weights(h, out_h)
    wx = _overlap_weights(w, out_w)
    out = wy @ gray @ wx.T
    return round_half_up(out).astype(np.uint8)
