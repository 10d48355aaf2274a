"""Multi-objective flowshop scheduling with missing operations.

Permutation schedules are scored on makespan, weighted total completion time
and total tardiness; four evolutionary solvers, two front quality indicators
and a seeded experiment harness sit on top.
"""

from .algorithms import (
    AlgoConfig,
    Algorithm,
    PRESET_PARAMETERS,
    RunResult,
    preset,
    run_algorithm,
    run_moead,
    run_nsga2,
    run_nsga3,
    run_spea2,
)
from .evaluation import (
    Evaluator,
    ObjectiveVector,
    completion_times,
    dominates,
    evaluate,
)
from .experiment import (
    ExperimentPlan,
    ExperimentResult,
    InstanceSpec,
    load_plan,
    missing_ops_sweep,
    run_experiment,
    run_seed,
)
from .instances import (
    GeneratorConfig,
    Instance,
    InstanceFormatError,
    generate_instance,
    instance_name,
    load_instance,
    parse_instance,
    save_instance,
    serialize_instance,
)
from .metrics import (
    HV_REFERENCE_POINT,
    ParetoFront,
    ReferenceFront,
    SpreadTerms,
    consolidate,
    hypervolume3,
    normalize,
    relative_hypervolume,
    spread,
    spread_terms,
)

__version__ = "0.1.0"

__all__ = [
    "AlgoConfig",
    "Algorithm",
    "Evaluator",
    "ExperimentPlan",
    "ExperimentResult",
    "GeneratorConfig",
    "HV_REFERENCE_POINT",
    "Instance",
    "InstanceFormatError",
    "InstanceSpec",
    "ObjectiveVector",
    "PRESET_PARAMETERS",
    "ParetoFront",
    "ReferenceFront",
    "RunResult",
    "SpreadTerms",
    "completion_times",
    "consolidate",
    "dominates",
    "evaluate",
    "generate_instance",
    "hypervolume3",
    "instance_name",
    "load_instance",
    "load_plan",
    "missing_ops_sweep",
    "normalize",
    "parse_instance",
    "preset",
    "relative_hypervolume",
    "run_algorithm",
    "run_experiment",
    "run_moead",
    "run_nsga2",
    "run_nsga3",
    "run_seed",
    "run_spea2",
    "save_instance",
    "serialize_instance",
    "spread",
    "spread_terms",
]
