"""Grounding-set selection for signed consensus matrices.

Pick a minimum-size set of rows/columns of a symmetric matrix whose
removal leaves a principal submatrix with all eigenvalues above a
threshold, using a submodular expected-negative-part certificate, two
cheaper sufficient conditions, and reference baselines, plus the
supporting graph generator, consensus simulator, and experiment
harness.
"""

from .estimators import GroundingSelector
from .experiment import (ExperimentSpec, TrialRecord, aggregate_means,
                         default_spec, read_records, run_experiment,
                         run_method, verify_records, write_records)
from .graph import (GeomGraphConfig, SignedGraph, degrees, laplacian,
                    random_geometric, read_edge_list, split_laplacian,
                    split_signed, write_edge_list)
from .linalg import (Spectrum, eig_sym, lambda_min, merikoski_bound,
                     read_matrix_text, sym_matrix, write_matrix_text)
from .quadform import QuadBudget, default_budget, imhof_survival, q_value
from .selection import (METHODS, CertificateError, SelectionResult,
                        baseline_degree, baseline_random,
                        brute_force_min_set, choose_alpha, greedy_inv_trace,
                        greedy_nonsymmetric, greedy_q,
                        logdet_cardinality_sweep)
from .simulate import (Trajectory, consensus_trajectory,
                       read_trajectory_csv, verify_rate,
                       write_trajectory_csv)

__version__ = "0.1.0"

__all__ = [
    "CertificateError", "ExperimentSpec", "GeomGraphConfig",
    "GroundingSelector", "METHODS", "QuadBudget", "SelectionResult",
    "SignedGraph", "Spectrum", "Trajectory", "TrialRecord",
    "aggregate_means", "baseline_degree", "baseline_random",
    "brute_force_min_set", "choose_alpha", "consensus_trajectory",
    "default_budget", "default_spec", "degrees", "eig_sym", "greedy_inv_trace",
    "greedy_nonsymmetric", "greedy_q", "imhof_survival", "lambda_min",
    "laplacian", "logdet_cardinality_sweep", "merikoski_bound", "q_value",
    "random_geometric", "read_edge_list", "read_matrix_text", "read_records",
    "read_trajectory_csv", "run_experiment", "run_method", "split_laplacian",
    "split_signed", "sym_matrix", "verify_rate", "verify_records",
    "write_edge_list", "write_matrix_text", "write_records",
    "write_trajectory_csv", "__version__",
]
