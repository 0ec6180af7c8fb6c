"""Interference cross-section matrices and the controlled cross section.

For a superposition c1|1> + c2|2> scattering into one product arrangement,
the observable cross section is the quadratic form c^H M c of the 2x2
Hermitian matrix

    M = [[sigma11, sigma12], [conj(sigma12), sigma22]],

where sigma11 and sigma22 are the ordinary cross sections out of the pure
initial states and sigma12 is the complex interference term.  M is a Gram
matrix of the amplitude columns, hence positive semidefinite, and
|sigma12| <= sqrt(sigma11*sigma22) (Schwartz); the closer that bound is to
saturation, the wider the controllable range.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .constants import TWO_PI
from .core import AmplitudeTable
from .errors import DegenerateChannelError

__all__ = [
    "XsecMatrix",
    "ControlParams",
    "cross_section_matrix",
    "differential_matrix",
    "controlled_cross_section",
    "schwartz_ratio",
]

DIAG_SLACK = 1e-12  # absolute, clamps roundoff-negative diagonals
SCHWARTZ_SLACK = 1e-10  # relative to sigma11 + sigma22
EVAL_SLACK = 1e-10  # relative to sigma11 + sigma22, for the quadratic form


def _reduce_phase(phi: float) -> float:
    p = math.fmod(phi, TWO_PI)
    if p < 0.0:
        p += TWO_PI
    if p >= TWO_PI:
        p = 0.0
    return p


@dataclass(frozen=True)
class ControlParams:
    """A point in control space: relative weight s and relative phase phi12.

    s = |c2|^2 / (|c1|^2 + |c2|^2) in [0, 1]; phi12 = Arg(c2/c1), stored
    reduced to [0, 2*pi).
    """

    s: float
    phi12: float

    def __post_init__(self):
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"s must lie in [0, 1], got {self.s!r}")
        if not math.isfinite(self.phi12):
            raise ValueError(f"phi12 must be finite, got {self.phi12!r}")
        object.__setattr__(self, "phi12", _reduce_phase(self.phi12))

    def coefficients(self) -> tuple[float, complex]:
        """Unit superposition coefficients (c1 real >= 0, c2 complex)."""
        c1 = math.sqrt(1.0 - self.s)
        c2 = math.sqrt(self.s) * cmath.exp(1j * self.phi12)
        return c1, c2


@dataclass(frozen=True)
class XsecMatrix:
    """2x2 Hermitian interference matrix for one product arrangement.

    ``kind`` is "integral" (units A^2) or "differential" (units A^2/sr), in
    which case ``node`` records the angle-grid index.  Only the upper
    triangle is stored; sigma21 is conj(sigma12) by definition.
    """

    channel: str
    kind: str
    sigma11: float
    sigma22: float
    sigma12: complex
    node: int | None = None

    def __post_init__(self):
        if self.kind not in ("integral", "differential"):
            raise ValueError(f"kind must be integral|differential, got {self.kind!r}")
        if (self.kind == "differential") != (self.node is not None):
            raise ValueError("node index is required iff kind == differential")
        for name in ("sigma11", "sigma22"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            if v < 0.0:
                if v < -DIAG_SLACK:
                    raise ValueError(f"{name} = {v!r} is negative beyond roundoff slack")
                v = 0.0
            object.__setattr__(self, name, v)
        s12 = complex(self.sigma12)
        if not (math.isfinite(s12.real) and math.isfinite(s12.imag)):
            raise ValueError(f"sigma12 must be finite, got {s12!r}")
        bound = math.sqrt(self.sigma11 * self.sigma22) + SCHWARTZ_SLACK * self.trace
        if abs(s12) > bound:
            raise ValueError(
                f"|sigma12| = {abs(s12)!r} violates the Schwartz bound "
                f"sqrt(sigma11*sigma22) = {math.sqrt(self.sigma11 * self.sigma22)!r}"
            )
        object.__setattr__(self, "sigma12", s12)

    @property
    def trace(self) -> float:
        return self.sigma11 + self.sigma22

    @property
    def det(self) -> float:
        return self.sigma11 * self.sigma22 - abs(self.sigma12) ** 2

    def as_array(self) -> np.ndarray:
        return np.array(
            [[self.sigma11, self.sigma12], [self.sigma12.conjugate(), self.sigma22]],
            dtype=complex,
        )


def _gram(f: np.ndarray, weights: np.ndarray | None) -> tuple[float, float, complex]:
    """Weighted Gram entries of the two amplitude columns.

    ``f`` has shape (n_states, n_nodes, 2); ``weights`` has shape
    (n_nodes,) or is None for an unweighted (single-angle) sum.
    """
    f1 = f[:, :, 0]
    f2 = f[:, :, 1]
    if weights is None:
        s11 = float(np.sum(np.abs(f1) ** 2))
        s22 = float(np.sum(np.abs(f2) ** 2))
        s12 = complex(np.sum(np.conj(f1) * f2))
    else:
        w = weights[np.newaxis, :]
        s11 = float(np.sum(w * np.abs(f1) ** 2))
        s22 = float(np.sum(w * np.abs(f2) ** 2))
        s12 = complex(np.sum(w * np.conj(f1) * f2))
    return s11, s22, s12


def cross_section_matrix(table: AmplitudeTable, channel: str) -> XsecMatrix:
    """Integral interference matrix for one product arrangement.

    sigma(i,j) = sum_k w_k sum_n conj(f_{n,i}(theta_k)) f_{n,j}(theta_k),
    i.e. the quadrature over the product sphere of the angle-resolved Gram
    matrix.  Raises UnknownChannelError for an absent label.
    """
    block = table.channel(channel)
    s11, s22, s12 = _gram(block.amplitudes, table.grid.weights)
    return XsecMatrix(channel=channel, kind="integral", sigma11=s11, sigma22=s22, sigma12=s12)


def differential_matrix(table: AmplitudeTable, channel: str, node: int) -> XsecMatrix:
    """Angle-resolved interference matrix at one grid node (A^2/sr).

    No quadrature weight is applied; the sum runs over final states only.
    ``node`` must index the stored grid (no interpolation between nodes).
    """
    block = table.channel(channel)
    n_nodes = len(table.grid)
    if not 0 <= node < n_nodes:
        raise IndexError(f"node {node} outside grid of {n_nodes} nodes")
    s11, s22, s12 = _gram(block.amplitudes[:, node : node + 1, :], None)
    return XsecMatrix(
        channel=channel, kind="differential", sigma11=s11, sigma22=s22, sigma12=s12, node=node
    )


def controlled_cross_section(m: XsecMatrix, p: ControlParams) -> float:
    """Cross section of the superposition at control point (s, phi12).

    Evaluates (1-s)*sigma11 + s*sigma22
    + 2*sqrt(s(1-s))*|sigma12|*cos(Arg(sigma12) + phi12), which equals the
    quadratic form c^H M c at the unit coefficients of ``p``.  Tiny
    negative roundoff is clamped to zero; a value below the roundoff slack
    indicates an inconsistent matrix and raises.
    """
    interf = 2.0 * math.sqrt(p.s * (1.0 - p.s)) * abs(m.sigma12)
    value = (
        (1.0 - p.s) * m.sigma11
        + p.s * m.sigma22
        + interf * math.cos(cmath.phase(m.sigma12) + p.phi12)
    )
    if value < 0.0:
        if value < -EVAL_SLACK * m.trace:
            raise ValueError(
                f"cross section {value!r} negative beyond slack; matrix inconsistent"
            )
        value = 0.0
    return value


def schwartz_ratio(m: XsecMatrix) -> float:
    """Resonance-mediation diagnostic |sigma12| / sqrt(sigma11*sigma22).

    Equals 1 exactly when every final state at every angle is reached
    through one common intermediate (the amplitude columns are then
    proportional), and drops below 1 in the presence of direct scattering.
    Raises DegenerateChannelError when either diagonal vanishes.
    """
    if m.sigma11 <= 0.0 or m.sigma22 <= 0.0:
        raise DegenerateChannelError(
            f"schwartz ratio undefined: sigma11={m.sigma11!r} sigma22={m.sigma22!r}"
        )
    ratio = abs(m.sigma12) / math.sqrt(m.sigma11 * m.sigma22)
    if ratio > 1.0:
        if ratio > 1.0 + 1e-10:
            raise ValueError(f"schwartz ratio {ratio!r} above 1 beyond slack")
        ratio = 1.0
    return ratio
