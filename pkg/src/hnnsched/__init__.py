"""Total weighted tardiness scheduling on identical machines with a Hopfield network."""
from .baselines import JobOrdering, list_schedule, run_baseline, schedule_lbs
from .core import (
    ProblemInstance,
    Schedule,
    ScheduleDiagnostics,
    finish_time,
    flatten,
    schedule_length,
    total_weighted_tardiness,
    unflatten,
    validate,
)
from .hnn import SolveResult, SolverConfig, correct_schedule, hnn_descend, solve
from .instances import GeneratorConfig, generate, generate_batch
from .oracle import OracleResult, solve_exact
from .qp import QuadraticForm, ScheduleForm, assemble, energy_of, penalty_of, to_hopfield

__version__ = "0.1.0"
