import numpy as np
import pytest

from hsda.spectrum import CenteredSpectrum, ChannelPlane, dft_oracle, forward_fft, inverse_fft


def test_constant_plane_has_only_dc():
    spec = forward_fft(ChannelPlane(np.full((4, 4), 7.0)))
    assert spec.center == (2, 2)
    assert abs(spec.coeffs[2, 2] - (112 + 0j)) < 1e-9
    rest = spec.coeffs.copy()
    rest[2, 2] = 0
    assert np.abs(rest).max() < 1e-9


def test_impulse_at_origin_has_unit_magnitudes():
    samples = np.zeros((8, 8))
    samples[0, 0] = 1.0
    spec = forward_fft(ChannelPlane(samples))
    assert np.all(np.abs(spec.coeffs) == 1.0)


def test_forward_matches_oracle_on_random_16x16():
    rng = np.random.default_rng(123)
    plane = ChannelPlane(rng.uniform(0.0, 255.0, (16, 16)))
    delta = np.abs(forward_fft(plane).coeffs - dft_oracle(plane).coeffs)
    assert delta.max() < 1e-6


def test_oracle_on_1x1_plane_is_identity():
    spec = dft_oracle(ChannelPlane([[42.0]]))
    assert spec.coeffs[0, 0] == 42 + 0j


def test_oracle_agrees_with_forward_on_100_random_8x8():
    rng = np.random.default_rng(77)
    for _ in range(100):
        plane = ChannelPlane(rng.uniform(0.0, 255.0, (8, 8)))
        delta = np.abs(forward_fft(plane).coeffs - dft_oracle(plane).coeffs)
        assert delta.max() < 1e-6


def test_oracle_shifted_impulse_is_a_phase_ramp():
    samples = np.zeros((8, 8))
    samples[3, 2] = 1.0
    coeffs = dft_oracle(ChannelPlane(samples)).coeffs
    assert np.abs(np.abs(coeffs) - 1.0).max() < 1e-12
    for row in range(8):
        for col in range(8):
            u, v = row - 4, col - 4
            expected = np.exp(-2j * np.pi * (u * 3 / 8 + v * 2 / 8))
            assert abs(coeffs[row, col] - expected) < 1e-12


@pytest.mark.parametrize("shape", [(1, 1), (3, 5), (4, 6), (5, 7), (32, 32)])
def test_roundtrip_recovers_plane(shape):
    rng = np.random.default_rng(hash(shape) & 0xFFFF)
    plane = ChannelPlane(rng.uniform(0.0, 255.0, shape))
    back = inverse_fft(forward_fft(plane))
    assert np.abs(back.samples - plane.samples).max() < 1e-6


def test_zero_spectrum_inverts_to_zero_plane():
    plane = inverse_fft(CenteredSpectrum(np.zeros((5, 7), dtype=complex)))
    assert plane.samples.shape == (5, 7)
    assert np.all(plane.samples == 0.0)


def test_constant_plane_roundtrips_within_tight_tolerance():
    plane = ChannelPlane(np.full((6, 9), 201.0))
    back = inverse_fft(forward_fft(plane))
    assert np.abs(back.samples - 201.0).max() < 1e-9


@pytest.mark.parametrize("shape", [(1, 1), (2, 3), (5, 5), (4, 6), (7, 12), (16, 16)])
def test_parseval_energy_identity(shape):
    rng = np.random.default_rng(31 + shape[0] * 100 + shape[1])
    samples = rng.uniform(0.0, 255.0, shape)
    coeffs = forward_fft(ChannelPlane(samples)).coeffs
    spatial = np.sum(samples**2)
    spectral = np.sum(np.abs(coeffs) ** 2) / (shape[0] * shape[1])
    assert abs(spatial - spectral) <= 1e-9 * spatial


def test_forward_is_linear():
    rng = np.random.default_rng(404)
    p = rng.uniform(0.0, 255.0, (12, 9))
    q = rng.uniform(0.0, 255.0, (12, 9))
    a, b = 0.37, -2.5
    lhs = forward_fft(ChannelPlane(a * p + b * q)).coeffs
    rhs = a * forward_fft(ChannelPlane(p)).coeffs + b * forward_fft(ChannelPlane(q)).coeffs
    assert np.abs(lhs - rhs).max() < 1e-6


@pytest.mark.parametrize("shape", [(4, 6), (5, 7), (8, 8), (9, 4)])
def test_hermitian_symmetry_of_real_input(shape):
    rng = np.random.default_rng(19)
    coeffs = forward_fft(ChannelPlane(rng.uniform(0.0, 255.0, shape))).coeffs
    h, w = shape
    rows = (2 * (h // 2) - np.arange(h)[:, None]) % h
    cols = (2 * (w // 2) - np.arange(w)[None, :]) % w
    assert np.abs(coeffs - np.conj(coeffs[rows, cols])).max() < 1e-9


@pytest.mark.parametrize("bad", [np.zeros((0, 5)), np.zeros((5, 0)), np.zeros(12), [[]], 3.0])
def test_degenerate_grids_are_rejected(bad):
    with pytest.raises(ValueError):
        ChannelPlane(bad)
    with pytest.raises(ValueError):
        CenteredSpectrum(bad)


def test_values_are_immutable_once_constructed():
    plane = ChannelPlane(np.ones((3, 3)))
    with pytest.raises(ValueError):
        plane.samples[0, 0] = 9.0
    spec = forward_fft(plane)
    with pytest.raises(ValueError):
        spec.coeffs[0, 0] = 0
