"""Unitary quasi-inverses of single-qubit channels.

Given a CPTP qubit channel, find the unitary that, applied after the
channel, maximally decreases the mean square trace distance between
channel input and corrected output, averaged over the Bloch ball.
"""

from .channels import (
    AffineChannel,
    CptpReport,
    KrausChannel,
    UnitaryParams,
    apply,
    choi,
    compose,
    identity_channel,
    kraus_to_affine,
    phase_distance,
    random_channel,
    unitary_matrix,
    unitary_to_affine,
    validate_cptp,
)
from .inverter import (
    QForm,
    QuasiInverseResult,
    build_q,
    delta_mstd_direct,
    maximize,
    quasi_inverse,
)
from .metrics import (
    MstdReport,
    mstd_analytic,
    mstd_composed,
    mstd_monte_carlo,
    mstd_surface_analytic,
    trace_distance,
)
from .numerics import (
    ConvergenceError,
    RngStream,
    eig_herm4,
    eig_sym4,
    sample_ball,
    sample_sphere4,
)
from .oracle import VerificationReport, brute_force_best, verify
from .zoo import FamilySpec, GoldenExpectation, make

__version__ = "0.1.0"

__all__ = [
    "AffineChannel",
    "ConvergenceError",
    "CptpReport",
    "FamilySpec",
    "GoldenExpectation",
    "KrausChannel",
    "MstdReport",
    "QForm",
    "QuasiInverseResult",
    "RngStream",
    "UnitaryParams",
    "VerificationReport",
    "apply",
    "brute_force_best",
    "build_q",
    "choi",
    "compose",
    "delta_mstd_direct",
    "eig_herm4",
    "eig_sym4",
    "identity_channel",
    "kraus_to_affine",
    "make",
    "maximize",
    "mstd_analytic",
    "mstd_composed",
    "mstd_monte_carlo",
    "mstd_surface_analytic",
    "phase_distance",
    "quasi_inverse",
    "random_channel",
    "sample_ball",
    "sample_sphere4",
    "trace_distance",
    "unitary_matrix",
    "unitary_to_affine",
    "validate_cptp",
    "verify",
]
