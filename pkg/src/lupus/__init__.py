"""Grey-wolf style swarm optimizers with adaptive curve schedules, a
benchmark harness, and a swarm-trained neural classifier pipeline."""

__version__ = "0.1.0"

from .curves import (
    CurveParams,
    SigmoidScheduleParams,
    INERTIA_DEFAULTS,
    LEADER_WEIGHT_DEFAULTS,
    cauchy_inertia,
    cauchy_pdf,
    inverse_sigmoid_weight,
    leader_weight,
    sigmoid,
)
from .errors import ConfigError, DataError, LupusError
from .optimizer import (
    GwoConfig,
    PsoConfig,
    RunResult,
    SearchSpace,
    SwarmState,
    pso_run,
    run,
)

__all__ = [
    "CurveParams",
    "SigmoidScheduleParams",
    "INERTIA_DEFAULTS",
    "LEADER_WEIGHT_DEFAULTS",
    "cauchy_inertia",
    "cauchy_pdf",
    "inverse_sigmoid_weight",
    "leader_weight",
    "sigmoid",
    "ConfigError",
    "DataError",
    "LupusError",
    "GwoConfig",
    "PsoConfig",
    "RunResult",
    "SearchSpace",
    "SwarmState",
    "pso_run",
    "run",
    "__version__",
]
