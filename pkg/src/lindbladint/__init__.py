"""Positivity- and trace-preserving exponential integrators for Lindblad dynamics.

The package provides a full-rank step built on a Lyapunov solve (FREE),
the standard exponential-Euler step for comparison (STD), a low-rank
factor variant with truncated-SVD compression (LREE), a vectorized
reference oracle, scalar diagnostics, and a reproducible experiment
harness with a CLI.
"""

from .config import (
    ConfigError,
    ExperimentConfig,
    ToleranceRule,
    parse_config,
    parse_config_data,
    preset,
    preset_names,
    preset_note,
)
from .diagnostics import (
    StepDiagnostics,
    convergence_order,
    expm_constant_probe,
    least_squares_slope,
    population,
    relative_error,
    trace_deviation,
)
from .harness import (
    GateError,
    HarnessError,
    RunRecord,
    RunReport,
    run_experiment,
)
from .integrators import (
    IntegrationError,
    RankOverflowError,
    Scheme,
    StepPlan,
    Trajectory,
    free_step,
    integrate,
    lree_step,
    std_expeuler_step,
)
from .linalg import (
    DegenerateInputError,
    LyapunovSingularError,
    ToleranceSet,
    expm,
    expm_action,
    hermitian_abs,
    hermitize,
    kron,
    min_eigenvalue,
    solve_lyapunov,
    trace_norm,
    truncated_svd,
)
from .model import (
    LindbladModel,
    QuditChainSpec,
    chain_model,
    effective_drift,
    ghz_state,
    ising_chain_hamiltonian,
    lift_site_operator,
    perturbed_lowrank_state,
    qudit_jx,
    qudit_jz,
    random_jump_operator,
)
from .oracle import (
    OracleSizeError,
    dephasing_closed_form,
    oracle_drift,
    reference_solution,
    reference_solution_timedep,
    rk4_vectorized_step,
    superoperator,
    superoperator_applier,
)

__version__ = "0.1.0"
