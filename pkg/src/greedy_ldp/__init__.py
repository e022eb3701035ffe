"""Greedy independent sets on sparse Erdős–Rényi graphs and their large deviations.

Submodules
----------
model
    Parameter and path types, extended reals, seed derivation.
explorer
    Explicit graph sampling and the vertex-by-vertex greedy exploration.
chain
    The binomial-increment chain and the exact law of its stopping time.
fluid
    Law-of-large-numbers limit and CLT variance.
ldp
    Cost, Hamiltonian, extremals, rates and independent-set bounds.
"""

from .chain import (
    ChainTrajectory,
    StopTimeDist,
    exact_stop_time_distribution,
    scaled_path,
    simulate_chain,
    simulate_stop_times,
    tail_log_prob,
)
from .explorer import (
    ExplorationRecord,
    Graph,
    greedy_explore,
    sample_er_graph,
    verify_independent_maximal,
)
from .fluid import FluidCurve, clt_sigma2, fluid_z, t_star
from .ldp import (
    HamTrajectory,
    RateValue,
    bound_rate,
    cost_L,
    hamiltonian_H,
    invert_exit_time,
    lambert_w0,
    make_ham_trajectory,
    path_rate,
    poisson_rate,
    rate_F,
    sigma1_star,
    sigma2_star,
    tail_rate,
)
from .model import (
    NEG_INF,
    POS_INF,
    DomainError,
    ExtReal,
    ModelParams,
    NumericError,
    ParameterError,
    ResourceError,
    ScaledPath,
    derive_seed,
    rng_from_seed,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
