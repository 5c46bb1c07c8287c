"""Top-K selection by coefficient magnitude and seeded shuffling of the selection.

Randomness is pinned to an in-repo SplitMix64 generator so a plan's
permutation is a pure function of (spectrum, k, seed) on every platform and
library version; equal magnitudes rank by ascending row-major index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import CenteredSpectrum

__all__ = ["SplitMix64", "ShufflePlan", "select_top_k", "make_plan", "apply_plan"]

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator (SplitMix64) with unbiased bounded draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), exact via rejection sampling."""
        if n <= 0:
            raise ValueError(f"bound must be positive, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n


@dataclass(frozen=True)
class ShufflePlan:
    """Seeded selection + permutation record; replaying it is bit-exact.

    ``selected`` lists grid positions in descending magnitude order (row-major
    index breaks ties); ``permutation`` maps selection slots to selection slots.
    """

    k: int
    selected: tuple[tuple[int, int], ...]
    permutation: tuple[int, ...]
    seed: int

    def __post_init__(self):
        if self.k != len(self.selected):
            raise ValueError(f"plan k={self.k} but {len(self.selected)} selected positions")
        if len(set(self.selected)) != self.k:
            raise ValueError("selected positions must be distinct")
        if sorted(self.permutation) != list(range(self.k)):
            raise ValueError("permutation must be a bijection on the selection slots")


def select_top_k(spec: CenteredSpectrum, k: int) -> list[tuple[int, int]]:
    """The k positions with largest |coeff|, descending; ties go to the
    smaller row-major index so the selection is deterministic everywhere."""
    cells = spec.width * spec.height
    if k < 0 or k > cells:
        raise ValueError(f"k must be in [0, {cells}], got {k}")
    if k == 0:
        return []
    magnitudes = np.abs(spec.coeffs).ravel()
    # Stable sort of the negated magnitudes keeps row-major order within ties.
    order = np.argsort(-magnitudes, kind="stable")[:k]
    width = spec.width
    return [(int(flat) // width, int(flat) % width) for flat in order]


def make_plan(spec: CenteredSpectrum, k: int, seed: int) -> ShufflePlan:
    """Select the top-k cells and draw a uniform permutation of their slots
    with a seeded Fisher-Yates pass."""
    selected = tuple(select_top_k(spec, k))
    rng = SplitMix64(seed)
    perm = list(range(k))
    for i in range(k - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return ShufflePlan(k=k, selected=selected, permutation=tuple(perm), seed=seed & _MASK64)


def apply_plan(spec: CenteredSpectrum, plan: ShufflePlan) -> CenteredSpectrum:
    """Relocate the selected coefficients per the plan's permutation.

    Output cell ``selected[i]`` receives input cell ``selected[permutation[i]]``;
    everything outside the selection is copied bit-identically, so the
    coefficient multiset (and spectral energy) is preserved exactly.
    """
    out = spec.coeffs.copy()
    if plan.k > 0:
        rows = np.fromiter((p[0] for p in plan.selected), dtype=np.intp, count=plan.k)
        cols = np.fromiter((p[1] for p in plan.selected), dtype=np.intp, count=plan.k)
        if rows.min() < 0 or rows.max() >= spec.height or cols.min() < 0 or cols.max() >= spec.width:
            raise ValueError("plan positions fall outside the spectrum grid")
        perm = np.asarray(plan.permutation, dtype=np.intp)
        out[rows, cols] = spec.coeffs[rows[perm], cols[perm]]
    return CenteredSpectrum(out)
