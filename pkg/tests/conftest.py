import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def brute_force_otsu(hist):
    """Reference Otsu: try every threshold, maximize between-class variance."""
    best_t, best_var = 0, -1.0
    total = sum(hist)
    for t in range(256):
        w0 = sum(hist[: t + 1])
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            var = 0.0
        else:
            mu0 = sum(i * hist[i] for i in range(t + 1)) / w0
            mu1 = sum(i * hist[i] for i in range(t + 1, 256)) / w1
            var = w0 * w1 * (mu0 - mu1) ** 2
        if var > best_var:
            best_var, best_t = var, t
    return best_t


def flood_fill_components(binary, min_area):
    """Reference 8-connected component finder returning (y, x, w, h) boxes."""
    h, w = binary.shape
    seen = np.zeros_like(binary, dtype=bool)
    boxes = []
    for sy in range(h):
        for sx in range(w):
            if binary[sy, sx] and not seen[sy, sx]:
                stack = [(sy, sx)]
                seen[sy, sx] = True
                pixels = []
                while stack:
                    y, x = stack.pop()
                    pixels.append((y, x))
                    for dy in (-1, 0, 1):
                        for dx in (-1, 0, 1):
                            ny, nx = y + dy, x + dx
                            if 0 <= ny < h and 0 <= nx < w and binary[ny, nx] and not seen[ny, nx]:
                                seen[ny, nx] = True
                                stack.append((ny, nx))
                if len(pixels) >= min_area:
                    ys = [p[0] for p in pixels]
                    xs = [p[1] for p in pixels]
                    boxes.append((min(ys), min(xs), max(xs) - min(xs) + 1, max(ys) - min(ys) + 1))
    boxes.sort()
    return boxes


def lcs_length(a, b):
    """Reference dynamic-programming LCS length."""
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(m):
            dp[i + 1][j + 1] = dp[i][j] + 1 if a[i] == b[j] else max(dp[i][j + 1], dp[i + 1][j])
    return dp[n][m]
