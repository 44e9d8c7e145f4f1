"""Multi-objective posynomial geometric programming via weighted sums and the dual."""
from mogp.dual import DualPoint, DualProgram, build_dual, log_dual_gradient, log_dual_objective
from mogp.errors import (
    DomainError,
    DualInfeasible,
    GPError,
    InconsistentCertificate,
    NotConvertible,
    ParseError,
    RecoveryImpossible,
    Unbounded,
)
from mogp.io import load_program
from mogp.model import (
    Monomial,
    MultiObjectiveProgram,
    Posynomial,
    RawConstraint,
    RawObjective,
    VariableSpace,
    degree_of_difficulty,
    evaluate_posynomial,
    to_standard_form,
)
from mogp.recovery import PrimalSolution, VerificationReport, recover_primal, verify
from mogp.scalarize import PreferenceWeights, ScalarizedProgram, scalarize, weight_grid
from mogp.solver import DualSolution, SolverOptions, find_interior_point, solve_dual
from mogp.sweep import ParetoPoint, SweepReport, dominance_filter, ideal_points, sweep

__version__ = "0.1.0"
