"""Domain types for two-state superposition scattering data.

An :class:`AmplitudeTable` holds, at one total energy, the complex
transition amplitudes from the two superposed initial states into every
final state of every product arrangement, resolved on a polar-angle
quadrature grid.  All types are immutable after construction and safe to
share between threads; every operation in this package is a pure function
of its inputs.

Tables are restricted to azimuthally symmetric scattering: the two initial
states must carry the same helicity label m, otherwise the products would
acquire an azimuthal dependence that a polar-only grid cannot represent.
:func:`validate_table` reports a violation for mixed-m pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .constants import FOUR_PI, wavenumber
from .errors import ChannelClosedError, NonPositiveError, UnknownChannelError

__all__ = [
    "ChannelState",
    "AngleGrid",
    "gauss_legendre_grid",
    "ChannelBlock",
    "AmplitudeTable",
    "SuperpositionKinematics",
    "kinematic_pair",
    "validate_table",
]

WEIGHT_SUM_RTOL = 1e-12
ENERGY_CLOSURE_ATOL = 1e-12  # eV


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, order=True)
class ChannelState:
    """One asymptotic scattering state: arrangement label plus (v, j, m)."""

    arrangement: str
    v: int
    j: int
    m: int = 0

    def __post_init__(self):
        if not self.arrangement:
            raise ValueError("arrangement label must be nonempty")
        if self.v < 0 or self.j < 0:
            raise ValueError(f"v and j must be >= 0, got v={self.v} j={self.j}")
        if abs(self.m) > self.j:
            raise ValueError(f"|m| <= j required, got j={self.j} m={self.m}")


@dataclass(frozen=True)
class AngleGrid:
    """Polar-angle nodes (radians) with quadrature weights (steradians).

    Weights absorb the 2*pi azimuthal factor and the sin(theta) measure, so
    for a quadrature grid they sum to 4*pi.  A single-node grid is allowed
    for purely angle-resolved tables and is exempt from the sum rule.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(np.asarray(self.nodes, dtype=float)))
        object.__setattr__(self, "weights", _frozen(np.asarray(self.weights, dtype=float)))

    def __len__(self) -> int:
        return self.nodes.size

    def nearest_node(self, theta: float) -> int:
        """Index of the node closest to ``theta`` (radians)."""
        return int(np.argmin(np.abs(self.nodes - theta)))

    def violations(self) -> list[str]:
        out = []
        if self.nodes.ndim != 1 or self.weights.ndim != 1:
            out.append("grid: nodes and weights must be one-dimensional")
            return out
        if self.nodes.size != self.weights.size:
            out.append(
                f"grid: {self.nodes.size} nodes but {self.weights.size} weights"
            )
            return out
        if self.nodes.size == 0:
            out.append("grid: empty")
            return out
        if not np.all(np.isfinite(self.nodes)) or not np.all(np.isfinite(self.weights)):
            out.append("grid: non-finite node or weight")
            return out
        if np.any(self.weights <= 0.0):
            out.append("grid: every weight must be > 0")
        if np.any(self.nodes <= 0.0) or np.any(self.nodes >= math.pi):
            out.append("grid: nodes must lie strictly inside (0, pi)")
        if self.nodes.size > 1:
            if np.any(np.diff(self.nodes) <= 0.0):
                out.append("grid: nodes must be strictly increasing")
            total = float(self.weights.sum())
            if abs(total - FOUR_PI) > WEIGHT_SUM_RTOL * FOUR_PI:
                out.append(
                    f"grid: weights sum to {total!r}, expected 4*pi = {FOUR_PI!r}"
                )
        return out


def gauss_legendre_grid(order: int) -> AngleGrid:
    """Gauss-Legendre grid in cos(theta) with weights summing to 4*pi.

    Exact for integrands polynomial in cos(theta) up to degree 2*order - 1.
    """
    if order < 1:
        raise NonPositiveError(f"grid order must be >= 1, got {order}")
    x, w = leggauss(order)
    theta = np.arccos(x)[::-1]  # arccos is decreasing; reverse for increasing theta
    weights = 2.0 * math.pi * w[::-1]
    return AngleGrid(theta, weights)


@dataclass(frozen=True)
class ChannelBlock:
    """Amplitudes into one product arrangement.

    ``amplitudes[n, k, i]`` is the transition amplitude into final state n
    at angle node k from initial state i (column 0 or 1), in A*sr^(-1/2).
    """

    arrangement: str
    states: tuple[ChannelState, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(
            self, "amplitudes", _frozen(np.asarray(self.amplitudes, dtype=complex))
        )


@dataclass(frozen=True)
class AmplitudeTable:
    """All transition amplitudes out of one two-state superposition pair."""

    energy: float
    initial_pair: tuple[ChannelState, ChannelState]
    grid: AngleGrid
    channels: tuple[ChannelBlock, ...]

    def __post_init__(self):
        object.__setattr__(self, "initial_pair", tuple(self.initial_pair))
        object.__setattr__(self, "channels", tuple(self.channels))

    def arrangements(self) -> tuple[str, ...]:
        return tuple(b.arrangement for b in self.channels)

    def channel(self, arrangement: str) -> ChannelBlock:
        for block in self.channels:
            if block.arrangement == arrangement:
                return block
        raise UnknownChannelError(
            f"no channel {arrangement!r}; table has {list(self.arrangements())}"
        )


def validate_table(table: AmplitudeTable) -> list[str]:
    """Check every table invariant; returns one message per violation.

    Violations are data, not faults: an empty list means the table is
    valid.  Shape problems short-circuit the finer checks for the block
    they occur in.
    """
    out: list[str] = []
    a, b = table.initial_pair
    if a == b:
        out.append("initial_pair: the two initial states must be distinct")
    if a.arrangement != b.arrangement:
        out.append(
            f"initial_pair: arrangements differ ({a.arrangement!r} vs {b.arrangement!r})"
        )
    if a.m != b.m:
        out.append(
            "initial_pair: helicities differ; only azimuthally symmetric "
            "tables (equal m) are supported"
        )
    if not math.isfinite(table.energy):
        out.append("energy: must be finite")
    out.extend(table.grid.violations())

    n_nodes = len(table.grid)
    seen = set()
    for block in table.channels:
        label = block.arrangement
        if label in seen:
            out.append(f"channel {label!r}: duplicate arrangement label")
        seen.add(label)
        expected = (len(block.states), n_nodes, 2)
        if block.amplitudes.shape != expected:
            out.append(
                f"channel {label!r}: amplitude array has shape "
                f"{block.amplitudes.shape}, expected {expected}"
            )
            continue
        if not np.all(np.isfinite(block.amplitudes.view(float))):
            bad = np.argwhere(~np.isfinite(block.amplitudes))
            n, k, i = (int(x) for x in bad[0])
            out.append(
                f"channel {label!r}: non-finite amplitude at state {n}, "
                f"node {k}, column {i}"
            )
        for n, s in enumerate(block.states):
            if s.arrangement != label:
                out.append(
                    f"channel {label!r}: state {n} carries arrangement "
                    f"{s.arrangement!r}"
                )
    return out


@dataclass(frozen=True)
class SuperpositionKinematics:
    """Kinematic bookkeeping for the two degenerate-energy components.

    Both components share the same total energy E; they differ in internal
    energy and therefore in relative kinetic energy and wavenumber.  The
    equal-total-momentum condition of a lab-frame beam pair is a statement
    about beam preparation, not about these relative coordinates, and is
    not modelled here.
    """

    e1: float
    e2: float
    Ek1: float
    Ek2: float
    E: float
    mu: float
    k1: float
    k2: float


def kinematic_pair(e1: float, e2: float, Ek1: float, mu: float) -> SuperpositionKinematics:
    """Kinematics of a degenerate pair from one kinetic energy.

    Parameters
    ----------
    e1, e2 : float
        Internal energies of the two initial states (eV).
    Ek1 : float
        Relative kinetic energy of component 1 (eV), > 0.
    mu : float
        Collision reduced mass (amu), > 0.

    Raises
    ------
    NonPositiveError
        If Ek1 <= 0 or mu <= 0.
    ChannelClosedError
        If component 2 would be left with no kinetic energy
        (Ek1 + e1 <= e2).
    """
    if Ek1 <= 0.0:
        raise NonPositiveError(f"Ek1 must be > 0, got {Ek1!r}")
    if mu <= 0.0:
        raise NonPositiveError(f"mu must be > 0, got {mu!r}")
    delta = e2 - e1
    if Ek1 <= delta:
        raise ChannelClosedError(
            f"component 2 closed: Ek1 + e1 = {Ek1 + e1!r} <= e2 = {e2!r}"
        )
    Ek2 = Ek1 - delta
    return SuperpositionKinematics(
        e1=e1,
        e2=e2,
        Ek1=Ek1,
        Ek2=Ek2,
        E=Ek1 + e1,
        mu=mu,
        k1=wavenumber(mu, Ek1),
        k2=wavenumber(mu, Ek2),
    )
