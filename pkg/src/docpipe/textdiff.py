"""Line assembly of recognized blobs and Myers-diff scoring of OCR output.

compare_texts uses the original text's counts as denominators and truncates
(never rounds) percentages to two decimals for display.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyOriginal
from .segmentation import Blob


@dataclass(frozen=True)
class DiffReport:
    chars_original: int
    chars_ocr: int
    words_original: int
    words_ocr: int
    matched_chars: int
    matched_words: int

    @property
    def char_match_pct(self) -> float:
        return self.matched_chars / self.chars_original * 100.0

    @property
    def word_match_pct(self) -> float:
        if self.words_original == 0:
            return 0.0
        return self.matched_words / self.words_original * 100.0

    @property
    def char_match_display(self) -> str:
        return _truncate_pct(self.matched_chars, self.chars_original)

    @property
    def word_match_display(self) -> str:
        return _truncate_pct(self.matched_words, self.words_original)

    def to_dict(self) -> dict:
        return {
            "chars_original": self.chars_original,
            "chars_ocr": self.chars_ocr,
            "words_original": self.words_original,
            "words_ocr": self.words_ocr,
            "matched_chars": self.matched_chars,
            "matched_words": self.matched_words,
            "char_match_pct": self.char_match_pct,
            "word_match_pct": self.word_match_pct,
            "char_match_display": self.char_match_display,
            "word_match_display": self.word_match_display,
        }


def _truncate_pct(num: int, den: int) -> str:
    """floor(num/den * 100) to 2 decimals, done in integers so 52/61 -> "85.24"."""
    if den == 0:
        return "0.00"
    basis = num * 10000 // den
    return f"{basis // 100}.{basis % 100:02d}"


def myers_diff(a, b) -> list[tuple[str, list]]:
    """Shortest edit script between sequences a and b as runs of
    ("equal"|"delete"|"insert", elements). Equal runs realize an LCS."""
    n, m = len(a), len(b)
    if n == 0 and m == 0:
        return []
    max_d = n + m
    v = {1: 0}
    trace = []
    found = False
    for d in range(max_d + 1):
        trace.append(dict(v))
        for k in range(-d, d + 1, 2):
            if k == -d or (k != d and v[k - 1] < v[k + 1]):
                x = v[k + 1]
            else:
                x = v[k - 1] + 1
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[k] = x
            if x >= n and y >= m:
                found = True
                break
        if found:
            break
    # backtrack through the saved frontiers
    ops = []  # (tag, a_index or b_index) in reverse order
    x, y = n, m
    for d in range(len(trace) - 1, -1, -1):
        vd = trace[d]
        k = x - y
        if k == -d or (k != d and vd[k - 1] < vd[k + 1]):
            pk = k + 1
        else:
            pk = k - 1
        px = vd[pk]
        py = px - pk
        while x > px and y > py:
            x -= 1
            y -= 1
            ops.append(("equal", x))
        if d > 0:
            if x == px:  # came from k+1: an insertion from b
                ops.append(("insert", py))
            else:
                ops.append(("delete", px))
        x, y = px, py
    # group consecutive same-tag ops into runs with payloads
    script: list[tuple[str, list]] = []
    for tag, idx in reversed(ops):
        payload = a[idx] if tag in ("equal", "delete") else b[idx]
        if script and script[-1][0] == tag:
            script[-1][1].append(payload)
        else:
            script.append((tag, [payload]))
    return script


def apply_script(script, _a=None) -> list:
    """Materialize the b side of an edit script."""
    out = []
    for tag, payload in script:
        if tag in ("equal", "insert"):
            out.extend(payload)
    return out


def matched_length(script) -> int:
    return sum(len(payload) for tag, payload in script if tag == "equal")


def order_blobs_into_lines(blobs: list[Blob]) -> list[list[Blob]]:
    """Group blobs into text lines: two blobs share a line when their vertical
    extents overlap by at least half the smaller height (transitively)."""
    if not blobs:
        return []
    n = len(blobs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            a, b = blobs[i], blobs[j]
            overlap = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
            if overlap >= 0.5 * min(a.h, b.h):
                parent[find(i)] = find(j)
    groups: dict[int, list[Blob]] = {}
    for i, b in enumerate(blobs):
        groups.setdefault(find(i), []).append(b)
    lines = sorted(groups.values(), key=lambda g: np.mean([b.y for b in g]))
    return [sorted(line, key=lambda b: (b.x, b.y)) for line in lines]


def render_text(
    lines: list[list[Blob]],
    chars: dict[int, str],
    space_factor: float = 0.5,
) -> str:
    """Join per-blob characters into text, inserting a space where the gap
    between neighbors exceeds space_factor x the page's median blob width."""
    widths = [b.w for line in lines for b in line]
    median_w = float(np.median(widths)) if widths else 0.0
    threshold = space_factor * median_w
    out_lines = []
    for line in lines:
        parts = []
        prev = None
        for b in line:
            if prev is not None and b.x - (prev.x + prev.w) > threshold:
                parts.append(" ")
            parts.append(chars[b.id])
            prev = b
        out_lines.append("".join(parts))
    return "\n".join(out_lines)


def compare_texts(original: str, ocr: str) -> DiffReport:
    """Character and word match statistics of OCR output against ground truth."""
    if len(original) == 0:
        raise EmptyOriginal("original text is empty; percentages undefined")
    char_script = myers_diff(original, ocr)
    orig_words = original.split()
    ocr_words = ocr.split()
    word_script = myers_diff(orig_words, ocr_words)
    return DiffReport(
        chars_original=len(original),
        chars_ocr=len(ocr),
        words_original=len(orig_words),
        words_ocr=len(ocr_words),
        matched_chars=matched_length(char_script),
        matched_words=matched_length(word_script),
    )
