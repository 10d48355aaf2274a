"""Elitist non-dominated sorting solver (rank + crowding selection)."""

from __future__ import annotations

from time import perf_counter

import numpy as np

from ..core import crowding_distance, sort_objective_rows
from ..evaluation import Evaluator
from ..instances import Instance
from ..seeding import make_rng
from .common import (
    front_of,
    initial_genomes,
    make_offspring,
    notify_observer,
    require_algorithm,
    tournament_indices,
)
from .config import AlgoConfig, Algorithm, RunResult


def rank_crowding_selection(all_objs: np.ndarray, capacity: int):
    """Keep `capacity` members by front rank, breaking the last front by crowding.

    Returns (kept indices, their ranks, their crowding values); crowding is
    computed per full front before truncation, as used for mating selection.
    """
    keep: list[int] = []
    ranks: list[int] = []
    crowds: list[float] = []
    for rank, front in enumerate(sort_objective_rows(all_objs)):
        cd = crowding_distance(all_objs[front])
        room = capacity - len(keep)
        if len(front) <= room:
            keep.extend(int(i) for i in front)
            ranks.extend([rank] * len(front))
            crowds.extend(float(v) for v in cd)
            if len(keep) == capacity:
                break
        else:
            order = np.argsort(-cd, kind="stable")[:room]
            order = np.sort(order)  # keep original front order among survivors
            keep.extend(int(front[i]) for i in order)
            ranks.extend([rank] * room)
            crowds.extend(float(cd[i]) for i in order)
            break
    return keep, np.asarray(ranks), np.asarray(crowds)


def rank_then_crowding(ranks: np.ndarray, crowds: np.ndarray):
    def better(i: int, j: int) -> bool:
        if ranks[i] != ranks[j]:
            return ranks[i] < ranks[j]
        return crowds[i] > crowds[j]

    return better


def run_nsga2(inst: Instance, cfg: AlgoConfig, observer=None) -> RunResult:
    require_algorithm(cfg, Algorithm.NSGA2)
    rng = make_rng(cfg.seed)
    evaluator = Evaluator(inst)
    started = perf_counter()

    genomes = initial_genomes(cfg, inst, rng)
    objs = evaluator.evaluate_batch(np.stack(genomes))
    keep, ranks, crowds = rank_crowding_selection(objs, cfg.population)
    genomes = [genomes[i] for i in keep]
    objs = objs[keep]

    while True:
        notify_observer(observer, evaluator, genomes, objs)
        if evaluator.count >= cfg.max_evaluations:
            break
        better = rank_then_crowding(ranks, crowds)
        winners = tournament_indices(cfg.population, cfg.population, better, rng)
        children = make_offspring(
            [genomes[i] for i in winners], cfg.crossover_prob, cfg.mutation_prob, rng
        )
        child_objs = evaluator.evaluate_batch(np.stack(children))
        merged_genomes = genomes + children
        merged_objs = np.vstack([objs, child_objs])
        keep, ranks, crowds = rank_crowding_selection(merged_objs, cfg.population)
        genomes = [merged_genomes[i] for i in keep]
        objs = merged_objs[keep]

    return RunResult(
        front=front_of(genomes, objs),
        evaluations_used=evaluator.count,
        wall_time=perf_counter() - started,
        seed=cfg.seed,
        algorithm=Algorithm.NSGA2,
        instance_name=inst.name,
    )
