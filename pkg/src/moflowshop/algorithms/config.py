"""Solver configuration, tuned presets, and the per-run result record."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from ..metrics import ParetoFront

DEFAULT_MAX_EVALUATIONS = 150_000
DEFAULT_NEIGHBORHOOD_FRAC = 0.03


class Algorithm(enum.Enum):
    NSGA2 = "nsga2"
    NSGA3 = "nsga3"
    SPEA2 = "spea2"
    MOEAD = "moead"

    @property
    def ordinal(self) -> int:
        """Stable position in declaration order; used for seed derivation."""
        return list(Algorithm).index(self)

    @classmethod
    def parse(cls, label: str) -> "Algorithm":
        try:
            return cls(label.strip().lower())
        except ValueError:
            names = ", ".join(a.value for a in cls)
            raise ValueError(f"unknown algorithm {label!r}; expected one of {names}") from None


@dataclass(frozen=True)
class AlgoConfig:
    algorithm: Algorithm
    population: int
    crossover_prob: float
    mutation_prob: float
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS
    neighborhood_frac: float = DEFAULT_NEIGHBORHOOD_FRAC  # MOEA/D only
    seed: int = 0

    def __post_init__(self):
        if self.population < 4 or self.population % 2 != 0:
            raise ValueError("population must be an even integer >= 4")
        for label, p in (("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{label} must lie in [0, 1]")
        if self.max_evaluations < self.population:
            raise ValueError("max_evaluations must be >= population")
        if not 0.0 < self.neighborhood_frac <= 1.0:
            raise ValueError("neighborhood_frac must lie in (0, 1]")

    def with_seed(self, seed: int) -> "AlgoConfig":
        return replace(self, seed=seed)


# tuned parameter sets shipped with the toolkit (population, p_c, p_m)
PRESET_PARAMETERS = {
    Algorithm.NSGA2: (100, 0.7, 0.1),
    Algorithm.NSGA3: (50, 0.7, 0.1),
    Algorithm.SPEA2: (100, 0.9, 0.1),
    Algorithm.MOEAD: (50, 0.5, 0.1),
}


def preset(
    algorithm: Algorithm,
    seed: int = 0,
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS,
    **overrides,
) -> AlgoConfig:
    population, p_c, p_m = PRESET_PARAMETERS[algorithm]
    base = dict(
        algorithm=algorithm,
        population=population,
        crossover_prob=p_c,
        mutation_prob=p_m,
        max_evaluations=max_evaluations,
        seed=seed,
    )
    base.update(overrides)
    return AlgoConfig(**base)


@dataclass
class RunResult:
    front: ParetoFront
    evaluations_used: int
    wall_time: float  # seconds
    seed: int
    algorithm: Algorithm
    instance_name: str
