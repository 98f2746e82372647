"""Sparse phase retrieval by stochastic alternating minimization."""
__version__ = "0.1.0"

from .htp import htp_solve, least_squares_on_support, top_s_indices
from .init import InitResult, marginal_scores, estimate_support, spectral_initialize
from .metrics import RecoveryAssessment, assess, dist, is_success, relative_error
from .signal_model import (
    ProblemInstance,
    add_noise,
    bernoulli_subsample,
    generate_instance,
    generate_sensing_matrix,
    generate_sparse_signal,
    measure,
)
from .solvers import SolverConfig, SolverResult, altmin_solve, run_sam_pipeline, sam_solve, sign_vector

__all__ = [
    "InitResult", "ProblemInstance", "RecoveryAssessment", "SolverConfig", "SolverResult",
    "add_noise", "altmin_solve", "assess", "bernoulli_subsample", "dist", "estimate_support",
    "generate_instance", "generate_sensing_matrix", "generate_sparse_signal", "htp_solve",
    "is_success", "least_squares_on_support", "marginal_scores", "measure", "relative_error",
    "run_sam_pipeline", "sam_solve", "sign_vector", "spectral_initialize", "top_s_indices",
]
