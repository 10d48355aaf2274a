"""Decomposition solver: weighted subproblems, neighborhood replacement."""

from __future__ import annotations

import math
from time import perf_counter

import numpy as np

from ..core import pmx_crossover, swap_mutation
from ..evaluation import Evaluator
from ..instances import Instance
from ..seeding import make_rng
from .common import (
    das_dennis3,
    front_of,
    initial_genomes,
    lattice_count,
    require_algorithm,
)
from .config import AlgoConfig, Algorithm, RunResult

_MIN_WEIGHT = 1e-6


def weight_vectors(population: int) -> np.ndarray:
    """Exactly `population` weight vectors from the smallest covering lattice.

    When the lattice has more points than needed, rows are picked at evenly
    spaced lexicographic positions (they stay distinct because the spacing
    never drops below one). Zero components are raised to a small floor so
    every objective keeps a say in the scalarization.
    """
    h = 1
    while lattice_count(h) < population:
        h += 1
    pts = das_dennis3(h)
    if len(pts) > population:
        idx = np.round(np.linspace(0, len(pts) - 1, population)).astype(int)
        pts = pts[idx]
    return np.where(pts < _MIN_WEIGHT, _MIN_WEIGHT, pts)


def neighborhood_size(cfg: AlgoConfig) -> int:
    return max(2, int(math.floor(cfg.neighborhood_frac * cfg.population + 0.5)))


def neighborhoods(weights: np.ndarray, size: int) -> list[list[int]]:
    """Indices of the `size` nearest weight vectors (self included)."""
    diff = weights[:, None, :] - weights[None, :, :]
    dist = (diff * diff).sum(axis=-1)
    return [
        [int(j) for j in np.argsort(row, kind="stable")[:size]] for row in dist
    ]


def tchebycheff(vec, lam, ideal) -> float:
    return max(
        lam[0] * abs(vec[0] - ideal[0]),
        lam[1] * abs(vec[1] - ideal[1]),
        lam[2] * abs(vec[2] - ideal[2]),
    )


class _Archive:
    """Unbounded store of mutually non-dominated (vector, genome) pairs."""

    def __init__(self):
        self.pairs: dict[tuple, tuple] = {}
        self._settled: set[tuple] = set()  # vectors already adjudicated

    def offer(self, vec: tuple, genome: tuple) -> None:
        if vec in self._settled:
            return
        self._settled.add(vec)
        for other in self.pairs:
            if all(a <= b for a, b in zip(other, vec)) and other != vec:
                return  # dominated now, dominated forever
        self.pairs = {
            other: g
            for other, g in self.pairs.items()
            if not (all(a <= b for a, b in zip(vec, other)) and vec != other)
        }
        self.pairs[vec] = genome

    def front_inputs(self):
        genomes = [np.asarray(g, dtype=np.int64) for g in self.pairs.values()]
        objs = np.asarray(list(self.pairs), dtype=np.int64).reshape(-1, 3)
        return genomes, objs


def run_moead(inst: Instance, cfg: AlgoConfig, observer=None) -> RunResult:
    require_algorithm(cfg, Algorithm.MOEAD)
    rng = make_rng(cfg.seed)
    evaluator = Evaluator(inst)
    started = perf_counter()

    weights = weight_vectors(cfg.population)
    lam = [tuple(float(v) for v in row) for row in weights]
    hoods = neighborhoods(weights, neighborhood_size(cfg))

    genomes = initial_genomes(cfg, inst, rng)
    obj_rows = evaluator.evaluate_batch(np.stack(genomes))
    objs = [tuple(int(v) for v in row) for row in obj_rows]
    ideal = [min(o[k] for o in objs) for k in range(3)]

    archive = _Archive()
    for g, o in zip(genomes, objs):
        archive.offer(o, tuple(int(v) for v in g))

    n_jobs = inst.n_jobs
    while True:
        if observer is not None:
            observer(evaluator.count, front_of(*archive.front_inputs()))
        if evaluator.count >= cfg.max_evaluations:
            break
        for i in range(cfg.population):
            hood = hoods[i]
            pair = rng.choice(len(hood), size=2, replace=False)
            pa, pb = genomes[hood[pair[0]]], genomes[hood[pair[1]]]
            if n_jobs >= 2 and rng.random() < cfg.crossover_prob:
                child = pmx_crossover(pa, pb, rng)[0]
            else:
                child = pa.copy()
            if n_jobs >= 2 and rng.random() < cfg.mutation_prob:
                child = swap_mutation(child, rng)
            vec = evaluator.evaluate(child)
            for k in range(3):
                if vec[k] < ideal[k]:
                    ideal[k] = vec[k]
            for j in hood:
                if tchebycheff(vec, lam[j], ideal) <= tchebycheff(objs[j], lam[j], ideal):
                    genomes[j] = child
                    objs[j] = tuple(vec)
            archive.offer(tuple(vec), tuple(int(v) for v in child))

    return RunResult(
        front=front_of(*archive.front_inputs()),
        evaluations_used=evaluator.count,
        wall_time=perf_counter() - started,
        seed=cfg.seed,
        algorithm=Algorithm.MOEAD,
        instance_name=inst.name,
    )
