"""Green functions of space-time fractional diffusion-wave equations.

Spectral solutions built from three-parameter Mittag-Leffler kernels, with
independent reference oracles for checking them.
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    EdgeDecayViolation,
    FracGreenError,
    InputError,
    NonConvergence,
    NumericalError,
    QuadratureFailure,
    RealnessViolation,
    SeriesDivergence,
    StabilityViolation,
    ThetaNotZero,
)
from .kernels import kernel_single, kernel_two_term
from .mlf import MLArgs, MLResult, mittag_leffler, mlf_eval, mlf_series, reciprocal_gamma
from .oracle import FDConfig, gl_fd_solver, mlf_bigfloat, sumudu_numeric
from .spectral import (
    MODES,
    Grid1D,
    InitialData,
    ProblemSpec,
    SolutionField,
    SourceTerm,
    SpectralField,
    forward_transform,
    solve,
    solve_corollary1,
    solve_corollary2,
    solve_theorem1,
    solve_theorem2,
    source_convolution,
    synthesize,
)
from .symbol import RieszFellerTerm, SpaceOperator, b_of_k, riesz_feller_symbol, sigma_of_k

__all__ = [name for name in dir() if not name.startswith("_")]
