"""Two-state coherent control of collisional cross sections.

Build 2x2 interference cross-section matrices from transition-amplitude
tables, extremize controlled cross sections and cross-section ratios over
the superposition parameters (s, phi12) in closed form, diagnose
resonance mediation via the Schwartz ratio, and synthesize
Breit-Wigner-plus-background tables to exercise all of it.
"""

from .constants import reduced_mass, wavenumber
from .control import (
    ControlRange,
    controlled_ratio,
    cross_section_extrema,
    lattice_extrema,
    noncoherent_limits,
    ratio_extrema,
)
from .core import (
    AmplitudeTable,
    AngleGrid,
    ChannelBlock,
    ChannelState,
    SuperpositionKinematics,
    gauss_legendre_grid,
    kinematic_pair,
    validate_table,
)
from .errors import (
    ChannelClosedError,
    CohresError,
    DegenerateChannelError,
    MalformedFileError,
    NonPositiveError,
    SpecMismatchError,
    TableValidationError,
    UnknownChannelError,
    ZeroDenominatorError,
)
from .resonance import (
    BackgroundChannel,
    BackgroundSpec,
    BackgroundState,
    ExitChannel,
    ExitState,
    ResonanceSpec,
    breit_wigner_factor,
    legendre_shape_norm,
    lifetime_from_width,
    resonance_branching_ratio,
    synthesize_table,
    width_from_lifetime,
)
from .scan import ChannelScan, RatioScan, ScanRow, energy_scan, write_scan_csv
from .scenario import ScenarioConfig, read_scenario, write_scenario
from .tableio import read_table, write_table
from .xsection import (
    ControlParams,
    XsecMatrix,
    controlled_cross_section,
    cross_section_matrix,
    differential_matrix,
    schwartz_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTable",
    "AngleGrid",
    "BackgroundChannel",
    "BackgroundSpec",
    "BackgroundState",
    "ChannelBlock",
    "ChannelClosedError",
    "ChannelScan",
    "ChannelState",
    "CohresError",
    "ControlParams",
    "ControlRange",
    "DegenerateChannelError",
    "ExitChannel",
    "ExitState",
    "MalformedFileError",
    "NonPositiveError",
    "RatioScan",
    "ResonanceSpec",
    "ScanRow",
    "ScenarioConfig",
    "SpecMismatchError",
    "SuperpositionKinematics",
    "TableValidationError",
    "UnknownChannelError",
    "XsecMatrix",
    "ZeroDenominatorError",
    "breit_wigner_factor",
    "controlled_cross_section",
    "controlled_ratio",
    "cross_section_extrema",
    "cross_section_matrix",
    "differential_matrix",
    "energy_scan",
    "gauss_legendre_grid",
    "kinematic_pair",
    "lattice_extrema",
    "legendre_shape_norm",
    "lifetime_from_width",
    "noncoherent_limits",
    "ratio_extrema",
    "read_scenario",
    "read_table",
    "reduced_mass",
    "resonance_branching_ratio",
    "schwartz_ratio",
    "synthesize_table",
    "validate_table",
    "wavenumber",
    "width_from_lifetime",
    "write_scan_csv",
    "write_scenario",
    "write_table",
]
