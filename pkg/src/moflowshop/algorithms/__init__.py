"""Solver implementations and their shared configuration types."""

from ..instances import Instance
from .config import PRESET_PARAMETERS, AlgoConfig, Algorithm, RunResult, preset
from .moead import run_moead
from .nsga2 import run_nsga2
from .nsga3 import run_nsga3
from .spea2 import run_spea2

_RUNNERS = {
    Algorithm.NSGA2: run_nsga2,
    Algorithm.NSGA3: run_nsga3,
    Algorithm.SPEA2: run_spea2,
    Algorithm.MOEAD: run_moead,
}


def run_algorithm(inst: Instance, cfg: AlgoConfig, observer=None) -> RunResult:
    """Dispatch to the solver named by cfg.algorithm."""
    return _RUNNERS[cfg.algorithm](inst, cfg, observer=observer)


__all__ = [
    "Algorithm",
    "AlgoConfig",
    "RunResult",
    "PRESET_PARAMETERS",
    "preset",
    "run_algorithm",
    "run_nsga2",
    "run_nsga3",
    "run_spea2",
    "run_moead",
]
