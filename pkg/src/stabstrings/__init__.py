"""Toolkit for 2D qubit stabilizer Hamiltonians on a torus: degeneracy
counting, degeneracy-breaking string/point operators with certificates,
anyon truncation energetics, and Metropolis thermal-survival simulation."""

from .anyons import braiding_phase, energy_profile, syndrome, truncate
from .code import StabilizerCode, ValidationReport, builtin, parse
from .gf2 import BitMatrix, BitVector
from .identity import (
    ElementarySetFamily,
    IdentitySet,
    classify_topology,
    elementary_sets,
    identity_sets_basis,
    localize,
)
from .pauli import Area, PauliOperator
from .strings import (
    AssemblyResult,
    StringReport,
    assemble_logicals,
    build_string,
    classify_translational_3x3,
    local_breakers,
    logical_class,
)
from .thermal import SimTrajectory, ThermalConfig, failure_time, step

__all__ = [
    "Area",
    "AssemblyResult",
    "BitMatrix",
    "BitVector",
    "ElementarySetFamily",
    "IdentitySet",
    "PauliOperator",
    "SimTrajectory",
    "StabilizerCode",
    "StringReport",
    "ThermalConfig",
    "ValidationReport",
    "assemble_logicals",
    "braiding_phase",
    "build_string",
    "builtin",
    "classify_topology",
    "classify_translational_3x3",
    "elementary_sets",
    "energy_profile",
    "failure_time",
    "identity_sets_basis",
    "local_breakers",
    "localize",
    "logical_class",
    "parse",
    "step",
    "syndrome",
    "truncate",
]

__version__ = "0.1.0"
