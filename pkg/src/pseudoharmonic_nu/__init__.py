"""Bound states of the pseudoharmonic plus ring-shaped potential in D dimensions.

V(r, theta) = De (r/re - re/r)^2 + beta cot^2(theta) / r^2

Energies and normalized wavefunctions come from a Nikiforov-Uvarov
reduction (:mod:`.nu_engine`), split into :mod:`.angular` and
:mod:`.radial` factors and composed in :mod:`.system`. :mod:`.oracle`
provides independent finite-difference and quadrature checks, and
:mod:`.verify` runs them against the closed forms.
"""
__version__ = "0.1.0"

from .errors import (
    AmbiguousBranchError,
    BracketError,
    CollapseError,
    ConvergenceError,
    DomainError,
    EvaluationError,
    InconsistentInputError,
    NoPhysicalBranchError,
    NUReductionError,
    QuadratureError,
    UnsupportedFamilyError,
)
from .nu_engine import HypergeometricForm, NUSolution, select_branch
from .system import BoundState, PotentialSpec, Spectrum, enumerate_spectrum, make_state, total_wavefunction

__all__ = [
    "AmbiguousBranchError",
    "BoundState",
    "BracketError",
    "CollapseError",
    "ConvergenceError",
    "DomainError",
    "EvaluationError",
    "HypergeometricForm",
    "InconsistentInputError",
    "NUReductionError",
    "NUSolution",
    "NoPhysicalBranchError",
    "PotentialSpec",
    "QuadratureError",
    "Spectrum",
    "UnsupportedFamilyError",
    "enumerate_spectrum",
    "make_state",
    "select_branch",
    "total_wavefunction",
]
