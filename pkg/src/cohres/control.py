"""Exact extremization of controlled cross sections and their ratios.

The controlled cross section is the Rayleigh quotient of a 2x2 Hermitian
matrix over unit superposition coefficients, so its range over all
control parameters (s, phi12) is exactly the closed eigenvalue interval
[lambda_min, lambda_max].  A cross-section ratio is a generalized
Rayleigh quotient c^H A c / c^H B c; its extrema are the two roots of
det(A - lambda*B) = 0, with the denominator's null direction marking an
unbounded ratio when B is singular and A is not proportional to B.

Everything here is closed-form and deterministic.  ``lattice_extrema`` is
the deliberately independent brute-force cross-check: it evaluates the
objective on an (s, phi12) lattice and reports lattice extrema, nothing
more.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .constants import TWO_PI
from .errors import ZeroDenominatorError
from .xsection import ControlParams, XsecMatrix, controlled_cross_section

__all__ = [
    "ControlRange",
    "cross_section_extrema",
    "ratio_extrema",
    "noncoherent_limits",
    "controlled_ratio",
    "lattice_extrema",
]

SINGULAR_TOL = 1e-14  # det(B) <= tol * trace(B)^2 marks a singular denominator
DEGENERATE_TOL = 1e-11  # elementwise |A - kappa*B| below this (relative) is degenerate
DENOM_FLOOR = 1e-300  # lattice ratio points below this denominator are skipped


@dataclass(frozen=True)
class ControlRange:
    """Extrema of a control objective with the parameters achieving them.

    ``unbounded_max`` marks a ratio whose supremum is infinite;
    ``params_at_max`` then witnesses the denominator's zero direction.
    ``degenerate`` marks an objective that does not depend on the control
    parameters at all (identity-proportional matrix, or ratio of
    proportional matrices); the params are then the fixed conventional
    corners (0, 0) and (1, 0).
    """

    min_value: float
    max_value: float
    params_at_min: ControlParams
    params_at_max: ControlParams
    unbounded_max: bool = False
    degenerate: bool = False
    skipped_points: int = 0

    @property
    def param_separation(self) -> float:
        """Euclidean distance between the two achieving points in (s, phi12/2pi).

        Informational only: a gauge of how far apart the knob settings for
        minimum and maximum sit (phase measured on the shorter arc).
        """
        ds = self.params_at_max.s - self.params_at_min.s
        dphi = abs(self.params_at_max.phi12 - self.params_at_min.phi12)
        dphi = min(dphi, TWO_PI - dphi) / TWO_PI
        return math.hypot(ds, dphi)


def _params_from_vector(c1: complex, c2: complex) -> ControlParams:
    scale = max(abs(c1), abs(c2))
    if scale == 0.0:
        return ControlParams(0.0, 0.0)
    c1, c2 = c1 / scale, c2 / scale  # keeps |c|^2 away from underflow
    n1 = abs(c1) ** 2
    n2 = abs(c2) ** 2
    s = min(n2 / (n1 + n2), 1.0)
    phi = 0.0 if c1 == 0 else cmath.phase(c2 / c1)
    return ControlParams(s=s, phi12=phi)


def _eigvec_params(m: XsecMatrix, lam: float) -> ControlParams:
    """Control parameters of the unit eigenvector for eigenvalue ``lam``.

    The eigenvector is built from whichever row keeps the components well
    conditioned: the diagonal entry farther from the eigenvalue.
    """
    if abs(lam - m.sigma11) >= abs(lam - m.sigma22):
        c1, c2 = m.sigma12, complex(lam - m.sigma11)
    else:
        c1, c2 = complex(lam - m.sigma22), m.sigma12.conjugate()
    return _params_from_vector(c1, c2)


def cross_section_extrema(m: XsecMatrix) -> ControlRange:
    """Exact controllable range of one channel's cross section.

    The bounds are the eigenvalues of the interference matrix,
    lambda_-+ = (T -+ sqrt(T^2 - 4D))/2 with T the trace and D the
    determinant; the achieving (s, phi12) come from the unit
    eigenvectors.  lambda_min is computed as D / lambda_max, which avoids
    the cancellation in (T - sqrt(...))/2 and preserves the sum and
    product identities to machine precision.
    """
    t = m.trace
    disc_sq = (m.sigma11 - m.sigma22) ** 2 + 4.0 * abs(m.sigma12) ** 2
    lam_max = 0.5 * (t + math.sqrt(disc_sq))
    lam_min = m.det / lam_max if lam_max > 0.0 else 0.0

    if m.sigma12 == 0:
        if m.sigma11 == m.sigma22:
            return ControlRange(
                min_value=lam_min,
                max_value=lam_max,
                params_at_min=ControlParams(0.0, 0.0),
                params_at_max=ControlParams(1.0, 0.0),
                degenerate=True,
            )
        if m.sigma11 < m.sigma22:
            p_min, p_max = ControlParams(0.0, 0.0), ControlParams(1.0, 0.0)
        else:
            p_min, p_max = ControlParams(1.0, 0.0), ControlParams(0.0, 0.0)
        return ControlRange(lam_min, lam_max, p_min, p_max)

    return ControlRange(
        min_value=lam_min,
        max_value=lam_max,
        params_at_min=_eigvec_params(m, lam_min),
        params_at_max=_eigvec_params(m, lam_max),
    )


def noncoherent_limits(m: XsecMatrix) -> tuple[float, float]:
    """Cross sections with no interference: the s = 0 and s = 1 endpoints."""
    return m.sigma11, m.sigma22


def controlled_ratio(num: XsecMatrix, den: XsecMatrix, p: ControlParams) -> float:
    """Ratio of two controlled cross sections at one control point."""
    return controlled_cross_section(num, p) / controlled_cross_section(den, p)


def _null_params(m11: float, m22: float, m12: complex) -> ControlParams:
    """Control parameters along the null direction of a singular 2x2 Hermitian."""
    # pick the row with the larger norm for conditioning
    r1 = abs(m11) ** 2 + abs(m12) ** 2
    r2 = abs(m12) ** 2 + abs(m22) ** 2
    if r1 >= r2:
        c1, c2 = m12, complex(-m11)
    else:
        c1, c2 = complex(m22), -m12.conjugate()
    if c1 == 0 and c2 == 0:
        return ControlParams(0.0, 0.0)
    return _params_from_vector(c1, c2)


def ratio_extrema(
    num: XsecMatrix,
    den: XsecMatrix,
    *,
    tol_singular: float = SINGULAR_TOL,
    tol_degenerate: float = DEGENERATE_TOL,
) -> ControlRange:
    """Exact controllable range of the ratio of two channel cross sections.

    Solves det(A - lambda*B) = 0 for the numerator/denominator matrices.
    Three regimes:

    * A proportional to B (within ``tol_degenerate``, elementwise relative):
      the ratio is flat; ``degenerate`` is set and min = max = trace ratio.
    * B singular (det B <= tol_singular * trace(B)^2) with A not
      proportional: the ratio is unbounded above; ``unbounded_max`` is set,
      ``max_value`` is +inf and ``params_at_max`` is the denominator's zero
      direction.  The finite minimum is det(A) / tr(adj(B) A).
    * Otherwise both generalized eigenvalues are finite and real.

    Raises ZeroDenominatorError when trace(B) == 0.
    """
    a11, a22, a12 = num.sigma11, num.sigma22, num.sigma12
    b11, b22, b12 = den.sigma11, den.sigma22, den.sigma12
    tr_b = den.trace
    if tr_b == 0.0:
        raise ZeroDenominatorError("denominator matrix is identically zero")

    kappa = num.trace / tr_b
    scale = max(abs(a11), abs(a22), abs(a12), abs(kappa) * max(b11, b22, abs(b12)))
    dev = max(
        abs(a11 - kappa * b11),
        abs(a22 - kappa * b22),
        abs(a12 - kappa * b12),
    )
    if dev <= tol_degenerate * scale:
        return ControlRange(
            min_value=kappa,
            max_value=kappa,
            params_at_min=ControlParams(0.0, 0.0),
            params_at_max=ControlParams(1.0, 0.0),
            degenerate=True,
        )

    det_a = num.det
    det_b = den.det
    # m = tr(adj(B) A), the middle coefficient of det(A - lambda*B)
    mid = a11 * b22 + a22 * b11 - 2.0 * (a12 * b12.conjugate()).real

    if det_b <= tol_singular * tr_b**2:
        lam_min = det_a / mid
        return ControlRange(
            min_value=lam_min,
            max_value=math.inf,
            params_at_min=_pencil_null_params(num, den, lam_min),
            params_at_max=_null_params(b11, b22, b12),
            unbounded_max=True,
        )

    disc = mid * mid - 4.0 * det_b * det_a
    disc = math.sqrt(disc) if disc > 0.0 else 0.0
    lam_max = (mid + disc) / (2.0 * det_b)
    lam_min = det_a / (det_b * lam_max) if lam_max != 0.0 else (mid - disc) / (2.0 * det_b)
    return ControlRange(
        min_value=lam_min,
        max_value=lam_max,
        params_at_min=_pencil_null_params(num, den, lam_min),
        params_at_max=_pencil_null_params(num, den, lam_max),
    )


def _pencil_null_params(num: XsecMatrix, den: XsecMatrix, lam: float) -> ControlParams:
    """Parameters of the generalized eigenvector for det(A - lam*B) = 0."""
    return _null_params(
        num.sigma11 - lam * den.sigma11,
        num.sigma22 - lam * den.sigma22,
        num.sigma12 - lam * den.sigma12,
    )


def _sigma_lattice(m: XsecMatrix, s: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Controlled cross section on the outer product of ``s`` and ``phi``."""
    base = (1.0 - s) * m.sigma11 + s * m.sigma22
    amp = 2.0 * np.sqrt(s * (1.0 - s)) * abs(m.sigma12)
    phase = np.cos(cmath.phase(m.sigma12) + phi)
    values = base[:, None] + amp[:, None] * phase[None, :]
    return np.clip(values, 0.0, None)


def lattice_extrema(
    num: XsecMatrix,
    den: XsecMatrix | None = None,
    n_s: int = 721,
    n_phi: int = 721,
) -> ControlRange:
    """Brute-force extrema on an (s, phi12) lattice.

    The lattice contains both s endpoints and excludes phi = 2*pi
    (periodic).  Ties resolve to the lexicographically smallest (s, phi).
    For ratio objectives, lattice points whose denominator falls below
    ``DENOM_FLOOR`` are excluded and counted in ``skipped_points``.

    This is an independent check on the closed-form solvers: it never
    solves anything, it just evaluates.
    """
    if n_s < 2 or n_phi < 2:
        raise ValueError(f"need n_s, n_phi >= 2, got {n_s}, {n_phi}")
    s = np.linspace(0.0, 1.0, n_s)
    phi = np.linspace(0.0, TWO_PI, n_phi, endpoint=False)
    values = _sigma_lattice(num, s, phi)
    skipped = 0
    if den is not None:
        if den.trace == 0.0:
            raise ZeroDenominatorError("denominator matrix is identically zero")
        d = _sigma_lattice(den, s, phi)
        ok = d >= DENOM_FLOOR
        skipped = int(np.size(ok) - np.count_nonzero(ok))
        if skipped == np.size(ok):
            raise ZeroDenominatorError("denominator vanished on the whole lattice")
        values = np.where(ok, values / np.where(ok, d, 1.0), np.nan)
        i_min = int(np.nanargmin(values))
        i_max = int(np.nanargmax(values))
    else:
        i_min = int(np.argmin(values))
        i_max = int(np.argmax(values))

    def at(flat: int) -> tuple[float, ControlParams]:
        i, j = divmod(flat, n_phi)
        return float(values[i, j]), ControlParams(float(s[i]), float(phi[j]))

    lo, p_lo = at(i_min)
    hi, p_hi = at(i_max)
    return ControlRange(
        min_value=lo,
        max_value=hi,
        params_at_min=p_lo,
        params_at_max=p_hi,
        skipped_points=skipped,
    )
