"""Pieces shared by the solver loops."""

from __future__ import annotations

import numpy as np

from ..core import init_population, pmx_crossover, prefer_first, swap_mutation
from ..evaluation import Evaluator
from ..instances import Instance
from ..metrics import ParetoFront
from .config import AlgoConfig, Algorithm


def require_algorithm(cfg: AlgoConfig, expected: Algorithm) -> None:
    if cfg.algorithm is not expected:
        raise ValueError(f"config is for {cfg.algorithm.value}, expected {expected.value}")


def initial_genomes(cfg: AlgoConfig, inst: Instance, rng) -> list[np.ndarray]:
    pop = init_population(cfg.population, inst.n_jobs, rng)
    return [ind.genome for ind in pop.members]


def tournament_indices(count: int, pool_size: int, better, rng) -> list[int]:
    """count winners of independent binary tournaments over [0, pool_size)."""
    candidates = rng.integers(0, pool_size, size=(count, 2))
    winners = []
    for first, second in candidates:
        first, second = int(first), int(second)
        winners.append(first if prefer_first(first, second, better) else second)
    return winners


def make_offspring(parents: list[np.ndarray], p_c: float, p_m: float, rng) -> list[np.ndarray]:
    """Pair consecutive parents, recombine with p_c, then mutate with p_m.

    Gate draws happen in a fixed order (all crossover gates, pair by pair,
    then all mutation gates) so consumption of the stream is reproducible.
    """
    n_jobs = len(parents[0])
    children: list[np.ndarray] = []
    for k in range(0, len(parents) - 1, 2):
        a, b = parents[k], parents[k + 1]
        if n_jobs >= 2 and rng.random() < p_c:
            c1, c2 = pmx_crossover(a, b, rng)
        else:
            c1, c2 = a.copy(), b.copy()
        children.append(c1)
        children.append(c2)
    if len(parents) % 2 == 1:
        children.append(parents[-1].copy())
    if n_jobs >= 2:
        for k in range(len(children)):
            if rng.random() < p_m:
                children[k] = swap_mutation(children[k], rng)
    return children


def front_of(genomes: list[np.ndarray], objs: np.ndarray) -> ParetoFront:
    """Non-dominated subset as a ParetoFront (dedup on objective vector)."""
    return ParetoFront(
        (tuple(int(v) for v in objs[k]), tuple(int(v) for v in genomes[k]))
        for k in range(len(genomes))
    )


def notify_observer(observer, evaluator: Evaluator, genomes, objs) -> None:
    """Report the current elite set to a test/diagnostic hook, if any."""
    if observer is not None:
        observer(evaluator.count, front_of(genomes, objs))


def lattice_count(divisions: int) -> int:
    """Number of simplex-lattice points on 3 objectives: C(divisions + 2, 2)."""
    return (divisions + 2) * (divisions + 1) // 2


def das_dennis3(divisions: int) -> np.ndarray:
    """Structured directions on the 3-objective simplex, lexicographic order.

    Rows are non-negative, sum to 1, and enumerate all compositions of
    `divisions` into three parts scaled by 1/divisions.
    """
    if divisions < 1:
        raise ValueError("divisions must be at least 1")
    pts = [
        (i, j, divisions - i - j)
        for i in range(divisions + 1)
        for j in range(divisions + 1 - i)
    ]
    return np.asarray(pts, dtype=float) / float(divisions)
