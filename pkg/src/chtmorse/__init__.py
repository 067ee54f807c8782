"""Bound states of the generalized Morse potential from the Laplace transform
of the confluent hypergeometric equation, with independent numerical oracles."""

from .laplace import (
    CHTParams,
    LaurentPoly,
    TransformSeries,
    build_transform,
    coefficient_closed_form,
    coefficient_recursion,
    initial_value,
    inverse_transform,
    is_quantized,
    laguerre_identification,
    ode_residual,
    singularity_exponent,
)
from .morse import (
    BoundState,
    MorseParams,
    bound_state_count,
    energy,
    reduced_params,
    schrodinger_residual,
    spectrum,
    wavefunction,
    xi_of_x,
)
from .numerics import (
    GridSpec,
    QuadratureSpec,
    grid_convergence_study,
    integrate_halfline,
    numerov_eigenvalues,
)
from .special import (
    LaguerrePoly,
    gamma_ratio,
    laguerre_coeffs,
    laguerre_eval,
    laguerre_norm_integral,
    laguerre_weighted_integral,
)

__version__ = "0.1.0"
