"""Large-deviation analytics for the greedy exploration."""

from .cost import cost_L, cost_L_value, hamiltonian_H, poisson_rate
from .lambert import lambert_w0
from .quadrature import adaptive_gk15, gauss_legendre, gk15
from .rates import (
    RateValue,
    bound_rate,
    path_rate,
    rate_F,
    rate_integrand,
    sigma1_star,
    sigma2_star,
    tail_rate,
)
from .trajectory import ALPHA0_MAX, HamTrajectory, invert_exit_time, make_ham_trajectory

__all__ = [
    "cost_L",
    "cost_L_value",
    "hamiltonian_H",
    "poisson_rate",
    "lambert_w0",
    "adaptive_gk15",
    "gauss_legendre",
    "gk15",
    "RateValue",
    "bound_rate",
    "path_rate",
    "rate_F",
    "rate_integrand",
    "sigma1_star",
    "sigma2_star",
    "tail_rate",
    "ALPHA0_MAX",
    "HamTrajectory",
    "invert_exit_time",
    "make_ham_trajectory",
]
