"""Single-qubit tomography lab: simulated Pauli measurements and estimator comparisons."""

from .estimators import (
    BLOCH_BALL,
    METHOD_BAYES_COND,
    METHOD_BAYES_UNCOND,
    METHOD_LS,
    METHODS,
    PAPER_U_BALL,
    IntegrationError,
    IntegratorConfig,
    PosteriorSummary,
    PriorParams,
    RawEstimate,
    RejectionSamplingError,
    bayes_conditioned,
    bayes_conditioned_mc,
    bayes_posterior_mean,
    bayes_posterior_variance,
    bayes_unconditioned,
    ls_estimate,
    ls_relative_frequencies,
    posterior_summary,
    project_to_ball,
)
from .experiments import (
    ExperimentConfig,
    emit_csv,
    emit_repetitions_csv,
    run_experiment,
    run_point,
    run_sweep_length,
    run_sweep_n,
)
from .measurement import (
    MeasurementDataSet,
    SimSeed,
    format_dump,
    outcome_probability,
    parse_dump,
    simulate_dataset,
)
from .metrics import (
    AggregateRow,
    RepetitionResult,
    aggregate_repetitions,
    average_fidelity,
    average_hs,
    empirical_variance,
)
from .states import (
    BALL_TOL,
    IDENTITY,
    PAULIS,
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    InvalidStateError,
    bloch_euclidean_distance,
    bloch_hs_distance,
    bloch_to_density,
    density_sqrt,
    density_to_bloch,
    fidelity,
    fidelity_bloch,
    hs_distance,
    is_physical,
    is_pure,
    spectral_projection,
    validate_density_matrix,
)

__version__ = "0.1.0"
