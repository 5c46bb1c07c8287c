"""Shared test fixtures: synthetic images and independent oracles."""

from __future__ import annotations

import numpy as np

from hsda.augment import RasterImage


def random_image(rng: np.random.Generator, width: int, height: int) -> RasterImage:
    return RasterImage(rng.integers(0, 256, (height, width, 3), dtype=np.uint8))


def natural_photo(width: int = 704, height: int = 256, seed: int = 11) -> RasterImage:
    """A photo-like test image: smooth gradients and blobs with a few hard
    edges, so its spectral energy concentrates near DC the way camera
    imagery does."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    sky = 175.0 - 95.0 * (y / height)
    sun = 65.0 * np.exp(-(((x - width * 0.72) ** 2) + ((y - height * 0.22) ** 2)) / (2.0 * (0.08 * width) ** 2))
    rolling = 24.0 * np.sin(2.0 * np.pi * (x / width) * 3.0 + 1.3) * (y / height)
    base = sky + sun + rolling
    img = np.stack([base * 0.92, base, base * 1.06], axis=-1)
    for _ in range(6):
        r0 = int(rng.integers(0, height - 24))
        c0 = int(rng.integers(0, width - 40))
        rh = int(rng.integers(12, 24))
        cw = int(rng.integers(20, 40))
        img[r0 : r0 + rh, c0 : c0 + cw] = rng.uniform(25.0, 230.0, 3)
    return RasterImage(np.clip(img, 0, 255).astype(np.uint8))


def sorted_complex(coeffs: np.ndarray) -> np.ndarray:
    """Canonical ordering of a complex grid for exact multiset comparison."""
    return np.sort(coeffs, axis=None)


def top_k_by_sort(coeffs: np.ndarray, k: int) -> list[tuple[int, int]]:
    """Full-sort selection oracle: descending |coeff|, row-major index on ties."""
    mags = np.abs(coeffs).ravel()
    order = sorted(range(mags.size), key=lambda i: (-mags[i], i))
    width = coeffs.shape[1]
    return [(i // width, i % width) for i in order[:k]]
