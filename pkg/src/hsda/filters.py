"""Gaussian low-pass/high-pass mask pairs and element-wise spectrum filtering.

The low mask is ``exp(-(x^2 + y^2) / (2 * D^2))`` with ``(x, y)`` measured in
pixel offsets from the spectrum's center cell; the high mask is its exact
complement ``1 - low``, so the pair partitions unity cell by cell.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .spectrum import CenteredSpectrum

__all__ = ["GaussianFilterPair", "build_gaussian_pair", "apply_mask"]


@dataclass(frozen=True)
class GaussianFilterPair:
    """Matched low/high real masks over a ``(height, width)`` frequency grid."""

    d_param: float
    low_mask: np.ndarray
    high_mask: np.ndarray

    def __post_init__(self):
        if self.low_mask.shape != self.high_mask.shape:
            raise ValueError("low and high masks must share one shape")

    @property
    def height(self) -> int:
        return self.low_mask.shape[0]

    @property
    def width(self) -> int:
        return self.low_mask.shape[1]


@functools.lru_cache(maxsize=16)
def _cached_pair(width: int, height: int, d_param: float) -> GaussianFilterPair:
    x = np.arange(width, dtype=np.float64) - width // 2
    y = np.arange(height, dtype=np.float64) - height // 2
    radius_sq = y[:, None] ** 2 + x[None, :] ** 2
    low = np.exp(-radius_sq / (2.0 * d_param * d_param))
    high = 1.0 - low
    low.setflags(write=False)
    high.setflags(write=False)
    return GaussianFilterPair(d_param=d_param, low_mask=low, high_mask=high)


def build_gaussian_pair(width: int, height: int, d_param: float) -> GaussianFilterPair:
    """Build (or reuse) the Gaussian mask pair for a grid and cutoff ``d_param``.

    Pairs are cached per (width, height, d_param) since a batch run processes
    one resolution; the returned masks are read-only and safe to share.
    """
    if width < 1 or height < 1:
        raise ValueError(f"mask dimensions must be at least 1x1, got {width}x{height}")
    if not d_param > 0:
        raise ValueError(f"d_param must be positive, got {d_param}")
    return _cached_pair(int(width), int(height), float(d_param))


def apply_mask(spec: CenteredSpectrum, mask: np.ndarray) -> CenteredSpectrum:
    """Element-wise product of a real mask with a spectrum; the input is untouched."""
    mask = np.asarray(mask)
    if mask.shape != spec.coeffs.shape:
        raise ValueError(f"mask shape {mask.shape} does not match spectrum shape {spec.coeffs.shape}")
    return CenteredSpectrum(spec.coeffs * mask)
