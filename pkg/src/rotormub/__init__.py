"""Continuous mutually unbiased bases for the quantum rotor.

Submodules
----------
special_functions
    Hermite functions, Mehler kernel, complex Gaussian line wave functions.
rotor_hilbert
    Truncated angular-momentum states and the periodic angle grid.
fock_rotor_map
    Fock/angular-momentum identification and the operators built on it.
mub_stereographic
    The basis set obtained through q = tan(phi/2).
mub_fock
    The basis set built from the Fock-mapped Heisenberg pair.
appendix_analysis
    Why the stereographic route does not give a valid rotor.
verification, cli
    Named checks and the ``rotormub`` command.
"""
from .errors import (
    AliasingError,
    DegenerateAngles,
    DegenerateTheta,
    IllConditioned,
    InterpolationLoss,
    NoConvergence,
    PoleAtPi,
    QuadratureNoConvergence,
    RotorMubError,
    TruncationMismatch,
)

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "DegenerateAngles",
    "DegenerateTheta",
    "IllConditioned",
    "InterpolationLoss",
    "NoConvergence",
    "PoleAtPi",
    "QuadratureNoConvergence",
    "RotorMubError",
    "TruncationMismatch",
]
