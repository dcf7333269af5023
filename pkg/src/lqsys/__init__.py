"""lqsys: zeros, poles, invertibility and coherent feedback for linear
quantum systems.

The package computes state-space models from physical parameters, checks
physical realizability, finds invariant zeros by independent methods
(Rosenbrock pencil vs. the flat-adjoint shortcut vs. the Kalman
observable/unobservable split), computes poles and transmission zeros
exactly through the Smith-McMillan form over the Gaussian rationals,
classifies asymptotic strong left invertibility, and analyzes SISO
coherent feedback networks for squeezing and its sensitivity cost.
"""

from .errors import (
    DegenerateNetworkError,
    DimensionError,
    ExactnessError,
    HiddenModeConditionError,
    LqsysError,
    NumericalError,
    ParameterError,
    PoleEvaluationError,
    RealizabilityError,
    SpecFileError,
    SubspaceToleranceError,
    SynthesisError,
    UnsolvableError,
)
from .feedback import (
    AlphaSolution,
    Beamsplitter,
    FeedbackNetwork,
    QuadPlantParams,
    check_quadrature_duality,
    closed_loop,
    frequency_sweep,
    matched_controller,
    quadrature_transfer,
    sensitivity,
    sensitivity_functions,
    solve_alpha_for_squeezing,
    squeezing_residual,
    synthesize_matched_controller,
    unit_controller,
    unit_controller_alpha_formula,
)
from .invertibility import (
    InvertibilityReport,
    classify_left_invertibility,
    inversion_witness,
)
from .kalman import (
    HiddenModeReport,
    KalmanReport,
    check_imaginary_hidden_modes,
    invariant_zeros_via_kalman,
    kalman_decompose,
    minimal_realization,
)
from .linalg import (
    doubled_up,
    eigenvalues,
    flat_adjoint,
    is_doubled_up,
    rank_at_tolerance,
    sharp_adjoint,
    signature_j,
    split_doubled_up,
    symplectic_j,
)
from .model import (
    QSystemParams,
    StateSpace,
    build_state_space,
    check_physical_realizability,
    degenerate_parametric_amplifier,
    frequency_response,
    gain_system,
    passive_cavity,
    random_params,
    random_system,
    to_quadrature,
    verify_inverse_identity,
    with_lossless_modes,
)
from .rational import GaussianRational, Poly, RationalFn
from .smith import (
    RationalMatrix,
    SmithMcMillanForm,
    apply_operations,
    smith_mcmillan,
    transfer_matrix_exact,
    zeros_poles_from_smf,
)
from .spectra import SpectrumReport
from .zeros import (
    MirrorReport,
    RosenbrockPencil,
    ZeroDirections,
    det_zero_test,
    invariant_zeros_flat,
    invariant_zeros_pencil,
    normalrank,
    poles,
    transmission_zeros,
    verify_det_identity,
    verify_pole_zero_mirror,
    zero_directions,
)

__version__ = "0.1.0"
