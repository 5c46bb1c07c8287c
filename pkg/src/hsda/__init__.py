"""High-frequency shuffle data augmentation for RGB images.

Splits an image channel into Gaussian low/high frequency bands, shuffles the
K most dominant high-band coefficients with a seeded permutation, and
reconstructs; also provides band-reconstruction and spectrum-visualization
diagnostics. The batch CLI lives in :mod:`hsda.cli`.
"""

from .augment import (
    AugmentConfig,
    AugmentRecord,
    RasterImage,
    band_plane,
    hsda_augment,
    pick_channel,
    quantize_u8,
    reconstruct_band,
    spectrum_visual,
)
from .filters import GaussianFilterPair, apply_mask, build_gaussian_pair
from .shuffle import ShufflePlan, SplitMix64, apply_plan, make_plan, select_top_k
from .spectrum import CenteredSpectrum, ChannelPlane, dft_oracle, forward_fft, inverse_fft

__all__ = [
    "AugmentConfig",
    "AugmentRecord",
    "CenteredSpectrum",
    "ChannelPlane",
    "GaussianFilterPair",
    "RasterImage",
    "ShufflePlan",
    "SplitMix64",
    "apply_mask",
    "apply_plan",
    "band_plane",
    "build_gaussian_pair",
    "dft_oracle",
    "forward_fft",
    "hsda_augment",
    "inverse_fft",
    "make_plan",
    "pick_channel",
    "quantize_u8",
    "reconstruct_band",
    "select_top_k",
    "spectrum_visual",
]

__version__ = "0.1.0"
