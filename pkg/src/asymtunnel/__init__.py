"""Non-reciprocal two-site tunneling with a non-Hermitian Hamiltonian.

Biorthogonal eigensystems, closed-form and matrix-exponential time evolution,
renormalized transition probabilities, the semiclassical rate equation, and
figure-style data sweeps.
"""

from .dynamics import (
    SITE_A,
    SITE_B,
    CoefficientState,
    DensityMatrix,
    SiteState,
    amplitude,
    decompose,
    density_matrix,
    evolve,
    evolve_cL,
    evolve_cR,
    norm_factor,
    occupation,
    ode_residual_cR,
    probability,
    probability_ratio,
    propagate_bra_numeric,
    propagate_numeric,
)
from .errors import (
    DegenerateSpectrum,
    DomainError,
    NonPositiveNorm,
    NonSquare,
    NumericalError,
    StepTooLarge,
    TunnelingError,
    WindowTooShort,
)
from .estimator import TunnelingDimer
from .model import (
    ModelParams,
    Site,
    hamiltonian_2x2,
    hamiltonian_full,
    make_params,
    number_operator,
    params_from_beta,
)
from .semiclassical import RatePopulations, RateTrajectory, equilibrium_stats, integrate, rate_rhs
from .spectral import (
    BiorthogonalSystem,
    MetricOperator,
    eigensystem_analytic,
    eigensystem_numeric,
    metric_operator,
)
from .sweep import GridResult, GridSpec, TimeSeries, grid, timeseries

__version__ = "0.1.0"
