"""Bound states of the improved Tietz diatomic potential.

The ``q <= -1`` regime has closed-form energies and normalized
wavefunctions for any ``l``. The ``-1 < q < 0`` and ``q > 0`` regimes give
s-wave levels as roots of a hypergeometric condition. ``q = 0`` reduces to
the Morse potential. A finite-difference oracle checks all of them.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateParameterError,
    DomainError,
    EnergyOutOfRangeError,
    NoSuchStateError,
    NumericError,
    PoleError,
    RegimeError,
    TietzError,
)
from .potential import (
    CentrifugalScheme,
    MoleculeParams,
    RegimeTag,
    centrifugal_coeffs,
    classify,
    domain_floor,
    tietz_potential,
)
from .spectrum import BoundState, Method, RootSearchConfig, bound_states
from .wavefn import sample_state, wavefunction

__version__ = "0.1.0"

__all__ = [
    "BoundState",
    "CentrifugalScheme",
    "ConfigError",
    "ConvergenceError",
    "DegenerateParameterError",
    "DomainError",
    "EnergyOutOfRangeError",
    "Method",
    "MoleculeParams",
    "NoSuchStateError",
    "NumericError",
    "PoleError",
    "RegimeError",
    "RegimeTag",
    "RootSearchConfig",
    "TietzError",
    "bound_states",
    "centrifugal_coeffs",
    "classify",
    "domain_floor",
    "sample_state",
    "tietz_potential",
    "wavefunction",
]
