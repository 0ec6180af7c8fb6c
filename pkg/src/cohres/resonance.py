"""Synthetic amplitude tables: isolated Breit-Wigner pole plus direct term.

The ground-truth generator for every controllability property.  An
isolated quasi-bound intermediate with complex energy eps_r - i*Gamma/2
produces transition amplitudes that factorize into an entrance coupling
(per initial state), an exit coupling with an angular shape (per final
state), and a shared Breit-Wigner energy denominator.  Factorization is
what saturates the Schwartz bound and makes complete control possible; a
smooth direct background, coupled identically to both initial states by
default, breaks it by a tunable amount.

Angular shapes are real Legendre series in cos(theta), so Gauss-Legendre
grids integrate them exactly and branching ratios have closed forms.
Couplings are taken energy-independent across a scan: the pole is then
the only sharp feature.  Units of the couplings are fixed only up to the
requirement that amplitudes carry A*sr^(-1/2); any constant is absorbed
into the exit couplings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import legval

from .constants import HBAR_EV_FS, TWO_PI
from .core import AmplitudeTable, AngleGrid, ChannelBlock, ChannelState
from .errors import NonPositiveError, SpecMismatchError, UnknownChannelError

__all__ = [
    "ExitState",
    "ExitChannel",
    "ResonanceSpec",
    "BackgroundState",
    "BackgroundChannel",
    "BackgroundSpec",
    "breit_wigner_factor",
    "width_from_lifetime",
    "lifetime_from_width",
    "legendre_shape_norm",
    "resonance_branching_ratio",
    "synthesize_table",
]


@dataclass(frozen=True)
class ExitState:
    """Decay of the intermediate into one final state.

    ``shape`` holds real Legendre coefficients in cos(theta) describing the
    angular distribution of the decay amplitude.
    """

    state: ChannelState
    coupling: complex
    shape: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coupling", complex(self.coupling))
        object.__setattr__(self, "shape", tuple(float(c) for c in self.shape))
        if not self.shape:
            raise ValueError("angular shape needs at least one Legendre coefficient")


@dataclass(frozen=True)
class ExitChannel:
    arrangement: str
    states: tuple[ExitState, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))


@dataclass(frozen=True)
class ResonanceSpec:
    """Factorized pole term: position, total width, and couplings.

    ``entrance`` couples the intermediate to the two initial states;
    ``exits`` list, per product arrangement, the final states it decays
    into.  The complex resonance energy is eps_r - i*Gamma/2 (decaying
    state, lower half plane).
    """

    epsilon_r: float
    gamma_width: float
    entrance: tuple[complex, complex]
    exits: tuple[ExitChannel, ...]

    def __post_init__(self):
        if self.gamma_width <= 0.0:
            raise NonPositiveError(f"gamma_width must be > 0, got {self.gamma_width!r}")
        object.__setattr__(self, "entrance", tuple(complex(g) for g in self.entrance))
        object.__setattr__(self, "exits", tuple(self.exits))
        if len(self.entrance) != 2:
            raise ValueError("entrance must couple exactly two initial states")
        if not any(s.coupling != 0 for ch in self.exits for s in ch.states):
            raise ValueError("at least one exit coupling must be nonzero")

    @property
    def complex_energy(self) -> complex:
        return self.epsilon_r - 0.5j * self.gamma_width

    def exit_channel(self, arrangement: str) -> ExitChannel:
        for ch in self.exits:
            if ch.arrangement == arrangement:
                return ch
        raise UnknownChannelError(f"no exit channel {arrangement!r}")


@dataclass(frozen=True)
class BackgroundState:
    """Direct amplitude into one final state: value at a reference energy,
    linear slope per eV, and an angular shape (Legendre in cos(theta)).

    ``column_weights`` lets the direct term couple asymmetrically to the
    two initial states; the default (1, 1) couples identically to both.
    """

    state: ChannelState
    amplitude: complex
    slope: complex
    shape: tuple[float, ...]
    column_weights: tuple[complex, complex] = (1.0 + 0.0j, 1.0 + 0.0j)

    def __post_init__(self):
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "slope", complex(self.slope))
        object.__setattr__(self, "shape", tuple(float(c) for c in self.shape))
        object.__setattr__(
            self, "column_weights", tuple(complex(w) for w in self.column_weights)
        )
        if not self.shape:
            raise ValueError("angular shape needs at least one Legendre coefficient")
        if len(self.column_weights) != 2:
            raise ValueError("column_weights must have exactly two entries")
        for name in ("amplitude", "slope"):
            z = getattr(self, name)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"{name} must be finite, got {z!r}")


@dataclass(frozen=True)
class BackgroundChannel:
    """Direct term for one product arrangement."""

    arrangement: str
    states: tuple[BackgroundState, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))


@dataclass(frozen=True)
class BackgroundSpec:
    reference_energy: float
    channels: tuple[BackgroundChannel, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(self.channels))


def breit_wigner_factor(energy: float, spec: ResonanceSpec) -> complex:
    """Resonance denominator 1 / (E - eps_r + i*Gamma/2), in 1/eV.

    On resonance this is -2i/Gamma; |factor|^2 is a Lorentzian of full
    width Gamma at half maximum.  Never singular for Gamma > 0.
    """
    return 1.0 / complex(energy - spec.epsilon_r, 0.5 * spec.gamma_width)


def width_from_lifetime(tau_fs: float) -> float:
    """Total width Gamma = hbar / tau, tau in femtoseconds, Gamma in eV."""
    if tau_fs <= 0.0:
        raise NonPositiveError(f"lifetime must be > 0, got {tau_fs!r}")
    return HBAR_EV_FS / tau_fs


def lifetime_from_width(gamma_ev: float) -> float:
    """Lifetime tau = hbar / Gamma, Gamma in eV, tau in femtoseconds."""
    if gamma_ev <= 0.0:
        raise NonPositiveError(f"width must be > 0, got {gamma_ev!r}")
    return HBAR_EV_FS / gamma_ev


def legendre_shape_norm(shape: tuple[float, ...] | list[float]) -> float:
    """Solid-angle norm of a Legendre shape: integral of |shape(cos theta)|^2.

    Orthogonality gives 2*pi * sum_l c_l^2 * 2/(2l+1) exactly.
    """
    return TWO_PI * sum(c * c * 2.0 / (2 * l + 1) for l, c in enumerate(shape))


def resonance_branching_ratio(spec: ResonanceSpec, channel_a: str, channel_b: str) -> float:
    """Ratio of resonance decay fluxes into two product arrangements.

    sum_n |coupling_n|^2 * norm(shape_n) over channel_a divided by the same
    over channel_b.  For purely pole-mediated scattering this is the exact
    cross-section ratio, independent of energy and of the control
    parameters.
    """

    def flux(label: str) -> float:
        ch = spec.exit_channel(label)
        return sum(abs(s.coupling) ** 2 * legendre_shape_norm(s.shape) for s in ch.states)

    return flux(channel_a) / flux(channel_b)


def _check_coverage(res: ResonanceSpec, bg: BackgroundSpec) -> None:
    res_list = [(ch.arrangement, tuple(s.state for s in ch.states)) for ch in res.exits]
    bg_list = [(ch.arrangement, tuple(s.state for s in ch.states)) for ch in bg.channels]
    if res_list != bg_list:
        raise SpecMismatchError(
            f"resonance covers {res_list}, background covers {bg_list} "
            "(same channels, same states, same order required)"
        )


def synthesize_table(
    res: ResonanceSpec,
    bg: BackgroundSpec,
    grid: AngleGrid,
    energy: float,
    initial_pair: tuple[ChannelState, ChannelState],
    mix: float,
) -> AmplitudeTable:
    """Amplitude table of a pole plus direct term at one total energy.

    For final state n at angle node k, column i:

        f[n, k, i] = mix * exit_n * shape_n(cos theta_k) * entrance_i * bw(E)
                   + (1 - mix) * bg_n(E) * shape'_n(cos theta_k) * w_i

    with bw the Breit-Wigner factor, bg_n(E) the linear-in-energy direct
    amplitude and w_i the per-column background weights.  ``mix`` = 1 gives
    a purely pole-mediated (factorized) table, ``mix`` = 0 a purely direct
    one.  Resonance and background must cover identical channel and state
    lists (SpecMismatchError otherwise).
    """
    if not 0.0 <= mix <= 1.0:
        raise ValueError(f"mix must lie in [0, 1], got {mix!r}")
    _check_coverage(res, bg)

    x = np.cos(grid.nodes)
    bw = breit_wigner_factor(energy, res)
    g1, g2 = res.entrance
    blocks = []
    for res_ch, bg_ch in zip(res.exits, bg.channels):
        n_states = len(res_ch.states)
        amps = np.zeros((n_states, len(grid), 2), dtype=complex)
        for n, (res_st, bg_st) in enumerate(zip(res_ch.states, bg_ch.states)):
            pole = mix * res_st.coupling * bw * legval(x, list(res_st.shape))
            amps[n, :, 0] = pole * g1
            amps[n, :, 1] = pole * g2
            direct = (
                (1.0 - mix)
                * (bg_st.amplitude + bg_st.slope * (energy - bg.reference_energy))
                * legval(x, list(bg_st.shape))
            )
            amps[n, :, 0] += direct * bg_st.column_weights[0]
            amps[n, :, 1] += direct * bg_st.column_weights[1]
        blocks.append(
            ChannelBlock(
                arrangement=res_ch.arrangement,
                states=tuple(s.state for s in res_ch.states),
                amplitudes=amps,
            )
        )
    return AmplitudeTable(
        energy=energy,
        initial_pair=tuple(initial_pair),
        grid=grid,
        channels=tuple(blocks),
    )
