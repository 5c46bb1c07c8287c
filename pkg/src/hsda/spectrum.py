"""2D Fourier transforms with a centered-spectrum layout.

The forward transform is unnormalized and stores the DC coefficient at the
grid's center cell ``(height // 2, width // 2)``; the inverse carries the
``1 / (width * height)`` factor and projects back to real samples. A slow
direct-summation transform (:func:`dft_oracle`) is kept alongside as an
independent cross-check for the FFT path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ChannelPlane", "CenteredSpectrum", "forward_fft", "inverse_fft", "dft_oracle"]


def _frozen_grid(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a 2D grid with positive dimensions, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChannelPlane:
    """One color channel lifted to real samples, shape ``(height, width)``.

    Samples are stored as float64; pixel input is expected in [0, 255] but
    intermediate planes (e.g. band reconstructions) may leave that range.
    """

    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_grid(self.samples, np.float64))

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]


@dataclass(frozen=True)
class CenteredSpectrum:
    """Complex 2D frequency grid with DC stored at ``(height // 2, width // 2)``."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _frozen_grid(self.coeffs, np.complex128))

    @property
    def height(self) -> int:
        return self.coeffs.shape[0]

    @property
    def width(self) -> int:
        return self.coeffs.shape[1]

    @property
    def center(self) -> tuple[int, int]:
        """(row, col) of the DC coefficient."""
        return self.height // 2, self.width // 2


def forward_fft(plane: ChannelPlane) -> CenteredSpectrum:
    """Unnormalized 2D DFT of the plane, re-indexed so DC sits at the center cell."""
    return CenteredSpectrum(np.fft.fftshift(np.fft.fft2(plane.samples)))


def inverse_fft(spec: CenteredSpectrum) -> ChannelPlane:
    """Invert :func:`forward_fft`: undo the center shift, apply the inverse DFT
    with the ``1 / (width * height)`` factor, and keep the real part.

    The imaginary residue is discarded without complaint; it is zero for
    spectra of real planes and generally nonzero after coefficient shuffling.
    """
    return ChannelPlane(np.fft.ifft2(np.fft.ifftshift(spec.coeffs)).real)


def dft_oracle(plane: ChannelPlane) -> CenteredSpectrum:
    """Centered DFT by direct double summation; a slow reference for forward_fft.

    O(N^2) in the pixel count, intended for grids up to roughly 64x64.
    """
    samples = plane.samples
    h, w = samples.shape
    rows = np.arange(h)[:, None]
    cols = np.arange(w)[None, :]
    coeffs = np.empty((h, w), dtype=np.complex128)
    for i in range(h):
        for j in range(w):
            u = i - h // 2
            v = j - w // 2
            basis = np.exp(-2j * np.pi * (u * rows / h + v * cols / w))
            coeffs[i, j] = np.sum(samples * basis)
    return CenteredSpectrum(coeffs)
