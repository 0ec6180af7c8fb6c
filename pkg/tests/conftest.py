import math
from pathlib import Path

import numpy as np
import pytest

from cohres import (
    AmplitudeTable,
    BackgroundChannel,
    BackgroundSpec,
    BackgroundState,
    ChannelBlock,
    ChannelState,
    ExitChannel,
    ExitState,
    ResonanceSpec,
    XsecMatrix,
    gauss_legendre_grid,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
FHD_SCENARIO = REPO_ROOT / "scenarios" / "fhd_like.json"

INITIAL = (ChannelState("F+HD", 0, 0, 0), ChannelState("F+HD", 0, 1, 0))


def random_table(rng: np.random.Generator, n_states=None, order=None) -> AmplitudeTable:
    """A structurally valid table with random complex amplitudes."""
    n_states = n_states or int(rng.integers(1, 6))
    order = order or int(rng.integers(2, 17))
    grid = gauss_legendre_grid(order)
    blocks = []
    for label in ("D+HF", "H+DF"):
        amps = rng.normal(size=(n_states, order, 2)) + 1j * rng.normal(size=(n_states, order, 2))
        states = tuple(ChannelState(label, 0, j, 0) for j in range(n_states))
        blocks.append(ChannelBlock(label, states, amps))
    return AmplitudeTable(0.5, INITIAL, grid, tuple(blocks))


def random_psd_matrix(rng: np.random.Generator, channel="X", normalize=True) -> XsecMatrix:
    """Random PSD interference matrix (Gram of a random 3x2 complex array)."""
    f = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    g = f.conj().T @ f
    if normalize:
        g = g / g.trace().real
    return XsecMatrix(channel, "integral", g[0, 0].real, g[1, 1].real, g[0, 1])


def ridged_psd_matrix(rng: np.random.Generator, ridge=0.15, channel="X") -> XsecMatrix:
    """PSD matrix bounded away from singular (for ratio denominators)."""
    m = random_psd_matrix(rng, channel=channel)
    t = m.trace
    return XsecMatrix(
        channel, "integral", m.sigma11 + ridge * t, m.sigma22 + ridge * t, m.sigma12
    )


def _positive_shape(rng: np.random.Generator) -> tuple[float, ...]:
    # strictly positive on [-1, 1]: dominant constant term, small higher ones
    c0 = float(rng.uniform(0.8, 1.2))
    c1 = float(rng.uniform(-0.3, 0.3))
    c2 = float(rng.uniform(-0.2, 0.2))
    return (c0, c1, c2)


def _coupling(rng: np.random.Generator) -> complex:
    mag = rng.uniform(0.3, 2.0)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    return complex(mag * math.cos(phase), mag * math.sin(phase))


def random_pure_resonance(rng: np.random.Generator):
    """Random single-pole scenario pieces: (resonance, empty-matched background).

    Every coupling is bounded away from zero and every shape strictly
    positive, so all diagonal cross sections are positive at every node.
    """
    eps = float(rng.uniform(0.1, 0.5))
    gamma = float(rng.uniform(1e-3, 5e-2))
    exits = []
    bg_channels = []
    for label in ("D+HF", "H+DF"):
        n = int(rng.integers(1, 4))
        ex_states = []
        bg_states = []
        for j in range(n):
            st = ChannelState(label, 0, j, 0)
            ex_states.append(ExitState(st, _coupling(rng), _positive_shape(rng)))
            bg_states.append(BackgroundState(st, 0.0, 0.0, (1.0,)))
        exits.append(ExitChannel(label, tuple(ex_states)))
        bg_channels.append(BackgroundChannel(label, tuple(bg_states)))
    res = ResonanceSpec(
        epsilon_r=eps,
        gamma_width=gamma,
        entrance=(_coupling(rng), _coupling(rng)),
        exits=tuple(exits),
    )
    bg = BackgroundSpec(reference_energy=eps, channels=tuple(bg_channels))
    return res, bg


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260808)
