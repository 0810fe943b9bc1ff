"""Synthetic page rendering from an embedded 5x7 bitmap font.

Used to generate printed-style training sheets (26 columns x 12 rows, one
letter per column) and test pages for end-to-end runs. Every glyph spans
the full 5 columns and is one 8-connected component, so tight bounding
boxes all share the same width and segmentation never splits a character.
"""

from __future__ import annotations

import numpy as np

GLYPH_W = 5
GLYPH_H = 7

# rows as 5-bit patterns, bit 4 = leftmost column
FONT_5X7 = {
    "A": (0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11),
    "B": (0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E),
    "C": (0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E),
    "D": (0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E),
    "E": (0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F),
    "F": (0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10),
    "G": (0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F),
    "H": (0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11),
    "I": (0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x1F),
    "J": (0x1F, 0x01, 0x01, 0x01, 0x01, 0x11, 0x0E),
    "K": (0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11),
    "L": (0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F),
    "M": (0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11),
    "N": (0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11),
    "O": (0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E),
    "P": (0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10),
    "Q": (0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D),
    "R": (0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11),
    "S": (0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E),
    "T": (0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04),
    "U": (0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E),
    "V": (0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04),
    "W": (0x11, 0x11, 0x11, 0x15, 0x15, 0x1B, 0x11),
    "X": (0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11),
    "Y": (0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04),
    "Z": (0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F),
}

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def glyph_mask(ch: str, scale: int = 4) -> np.ndarray:
    """Boolean ink mask of one letter at the given integer scale."""
    rows = FONT_5X7[ch]
    mask = np.array(
        [[(row >> (GLYPH_W - 1 - c)) & 1 for c in range(GLYPH_W)] for row in rows],
        dtype=bool,
    )
    return np.kron(mask, np.ones((scale, scale), dtype=bool))


def _stamp(page: np.ndarray, mask: np.ndarray, y: int, x: int):
    h, w = mask.shape
    page[y : y + h, x : x + w][mask] = 0


def render_training_sheet(
    scale: int = 4,
    n_samples: int = 12,
    margin: int = 20,
    gap: int = 12,
) -> np.ndarray:
    """Grayscale sheet with 26 columns (one letter each) and n_samples rows."""
    cell_w = GLYPH_W * scale + gap
    cell_h = GLYPH_H * scale + gap
    w = 2 * margin + len(ALPHABET) * cell_w
    h = 2 * margin + n_samples * cell_h
    page = np.full((h, w), 255, dtype=np.uint8)
    for col, ch in enumerate(ALPHABET):
        mask = glyph_mask(ch, scale)
        for row in range(n_samples):
            _stamp(page, mask, margin + row * cell_h, margin + col * cell_w)
    return page


def render_text_page(
    text: str,
    scale: int = 4,
    margin: int = 20,
    letter_gap: int = 1,
    line_gap: int = 10,
    jitter: int = 0,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Render uppercase A-Z text (spaces and newlines allowed) as a grayscale page.

    jitter shifts each glyph by up to +/- jitter pixels in both axes.
    """
    if jitter and rng is None:
        rng = np.random.default_rng(0)
    advance = (GLYPH_W + letter_gap) * scale
    space_advance = advance + GLYPH_W * scale  # clearly wider than letter gaps
    lines = text.split("\n")
    longest = max(
        sum(space_advance if ch == " " else advance for ch in line) for line in lines
    )
    line_h = GLYPH_H * scale + line_gap
    w = 2 * margin + longest + 2 * jitter
    h = 2 * margin + len(lines) * line_h + 2 * jitter
    page = np.full((h, w), 255, dtype=np.uint8)
    for li, line in enumerate(lines):
        x = margin + jitter
        y = margin + jitter + li * line_h
        for ch in line:
            if ch == " ":
                x += space_advance
                continue
            dx = dy = 0
            if jitter:
                dx, dy = rng.integers(-jitter, jitter + 1, size=2)
            _stamp(page, glyph_mask(ch, scale), y + dy, x + dx)
            x += advance
    return page


def add_salt_pepper(gray: np.ndarray, p: float, rng: np.random.Generator) -> np.ndarray:
    """Flip each pixel to 0 or 255 (equal odds) with probability p."""
    out = gray.copy()
    flip = rng.random(gray.shape) < p
    salt = rng.random(gray.shape) < 0.5
    out[flip & salt] = 255
    out[flip & ~salt] = 0
    return out
