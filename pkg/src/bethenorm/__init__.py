"""Master functions of sl_{r+1} Gaudin models, their critical points, Bethe
vectors, and the identity between the Shapovalov norm of a Bethe vector and
the Hessian of the master function."""

__version__ = "0.1.0"

from .lie import (
    RootSystem,
    RootSystemA,
    Weight,
    alpha_of,
    fundamental_weight,
    is_dominant_integral,
    pair,
    parse_weight,
    simple_root,
)
from .reps import (
    ModuleRealization,
    TensorRealization,
    TensorVector,
    exterior_rep,
    realization_for,
    shapovalov_pair,
    singular_subspace,
    tensor,
    weight_subspace,
)
from .master import CriticalPoint, MasterProblem, bethe_residual, hessian_det, log_phi, log_phi_hessian
from .solver import SolverOptions, SolverError, newton_refine, solve_all
from .bethe import BetheReport, bethe_vector, enumerate_P, omega_weight_function, verify_bethe
from .gaudin import casimir, eigenvalue_estimate, gaudin_apply, hamiltonian_asymptotics_check
from .multiplicity import decompose_fundamental, sing_dim, weyl_dimension
from .schubert import PolynomialPlane, plucker_check, ramification_at, weights_to_ramification, wronskian
