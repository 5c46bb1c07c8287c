"""Per-image high-frequency shuffle augmentation and band diagnostics.

The augmentation picks one RGB channel, splits its centered spectrum into
Gaussian low/high bands, shuffles the K most dominant high-band coefficients
with a seeded permutation, recombines with the untouched low band, and
inverse-transforms back to 8-bit samples. The other two channels pass through
byte-identical, so the augmented image keeps its ground-truth labels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .filters import apply_mask, build_gaussian_pair
from .shuffle import SplitMix64, apply_plan, make_plan
from .spectrum import CenteredSpectrum, ChannelPlane, forward_fft, inverse_fft

__all__ = [
    "RasterImage",
    "AugmentConfig",
    "AugmentRecord",
    "hsda_augment",
    "pick_channel",
    "reconstruct_band",
    "band_plane",
    "spectrum_visual",
    "quantize_u8",
]

_MASK64 = (1 << 64) - 1

CHANNEL_NAMES = ("red", "green", "blue")


@dataclass(frozen=True)
class RasterImage:
    """Decoded 8-bit RGB image, pixels shaped ``(height, width, 3)``."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.array(self.pixels, copy=True)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"image must have exactly 3 channels (RGB), got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be at least 1x1, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            raise ValueError(f"image samples must be 8-bit, got dtype {arr.dtype}")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def channel_plane(self, channel: int) -> ChannelPlane:
        """Lift one channel to floating-point samples."""
        if channel not in (0, 1, 2):
            raise ValueError(f"channel must be 0, 1 or 2, got {channel}")
        return ChannelPlane(self.pixels[:, :, channel])


@dataclass(frozen=True)
class AugmentConfig:
    """Augmentation knobs; ``channel_policy`` is a fixed index 0/1/2 or None
    for a seeded random draw. ``seed`` is the batch-level seed that per-image
    seeds are derived from."""

    k: int = 2000
    d_param: float = 10.0
    channel_policy: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"k must be non-negative, got {self.k}")
        if not self.d_param > 0:
            raise ValueError(f"d_param must be positive, got {self.d_param}")
        if self.channel_policy not in (None, 0, 1, 2):
            raise ValueError(f"channel_policy must be None or 0/1/2, got {self.channel_policy}")


@dataclass(frozen=True)
class AugmentRecord:
    """Everything needed to regenerate one augmented output bit-exactly."""

    src: str
    channel: int
    k: int
    d_param: float
    seed_effective: int
    dst: str


def _seed_words(seed: int) -> tuple[int, int]:
    # Fixed stream positions: word 0 feeds the channel draw, word 1 the plan,
    # so a replay with a pinned channel still shuffles identically.
    rng = SplitMix64(seed)
    return rng.next_u64(), rng.next_u64()


def pick_channel(channel_policy: int | None, seed: int) -> int:
    """Channel index this seed selects under the policy."""
    channel_word, _ = _seed_words(seed)
    if channel_policy is not None:
        if channel_policy not in (0, 1, 2):
            raise ValueError(f"channel_policy must be None or 0/1/2, got {channel_policy}")
        return channel_policy
    return SplitMix64(channel_word).below(3)


def quantize_u8(samples: np.ndarray) -> np.ndarray:
    """Clamp to [0, 255] and round half away from zero to 8-bit samples."""
    return np.floor(np.clip(samples, 0.0, 255.0) + 0.5).astype(np.uint8)


def hsda_augment(image: RasterImage, cfg: AugmentConfig, seed: int) -> tuple[RasterImage, AugmentRecord]:
    """Run the full shuffle pipeline on one image.

    Returns the augmented image plus a record (source/output identifiers left
    empty) from which the same output can be regenerated bit-exactly.
    """
    cells = image.width * image.height
    if cfg.k > cells:
        raise ValueError(f"k={cfg.k} exceeds the {cells} spectrum cells of a {image.width}x{image.height} image")

    channel = pick_channel(cfg.channel_policy, seed)
    _, plan_seed = _seed_words(seed)

    spec = forward_fft(image.channel_plane(channel))
    pair = build_gaussian_pair(image.width, image.height, cfg.d_param)
    low = apply_mask(spec, pair.low_mask)
    high = apply_mask(spec, pair.high_mask)

    plan = make_plan(high, cfg.k, plan_seed)
    shuffled = apply_plan(high, plan)

    combined = CenteredSpectrum(low.coeffs + shuffled.coeffs)
    augmented_plane = inverse_fft(combined)

    pixels = image.pixels.copy()
    pixels[:, :, channel] = quantize_u8(augmented_plane.samples)
    record = AugmentRecord(
        src="",
        channel=channel,
        k=cfg.k,
        d_param=cfg.d_param,
        seed_effective=seed & _MASK64,
        dst="",
    )
    return RasterImage(pixels), record


def band_plane(plane: ChannelPlane, d_param: float, band: str) -> ChannelPlane:
    """Band-limit one plane without quantization (low + high sums back to the
    original within floating tolerance)."""
    pair = build_gaussian_pair(plane.width, plane.height, d_param)
    if band == "low":
        mask = pair.low_mask
    elif band == "high":
        mask = pair.high_mask
    else:
        raise ValueError(f"band must be 'low' or 'high', got {band!r}")
    return inverse_fft(apply_mask(forward_fft(plane), mask))


def reconstruct_band(image: RasterImage, d_param: float, band: str) -> RasterImage:
    """Keep only one frequency band of every channel.

    ``low`` blurs the image; ``high`` leaves a mostly dark image that retains
    edges and outlines.
    """
    channels = [
        quantize_u8(band_plane(image.channel_plane(c), d_param, band).samples)
        for c in range(3)
    ]
    return RasterImage(np.stack(channels, axis=-1))


def spectrum_visual(image: RasterImage, channel: int) -> np.ndarray:
    """Log-magnitude view of one channel's centered spectrum as an 8-bit grid.

    ``log(1 + |coeff|)`` rescaled so min maps to 0 and max to 255 (bright
    center = DC); a flat spectrum (max == min) maps to all zeros.
    """
    spec = forward_fft(image.channel_plane(channel))
    view = np.log1p(np.abs(spec.coeffs))
    lo = float(view.min())
    hi = float(view.max())
    if hi == lo:
        return np.zeros(view.shape, dtype=np.uint8)
    return quantize_u8((view - lo) * (255.0 / (hi - lo)))
