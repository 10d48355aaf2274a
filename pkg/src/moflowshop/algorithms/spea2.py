"""Strength-based archive solver with nearest-neighbor density."""

from __future__ import annotations

import math
from time import perf_counter

import numpy as np

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


def _unique_rows(objs: np.ndarray):
    uniq, inverse, counts = np.unique(
        objs, axis=0, return_inverse=True, return_counts=True
    )
    return uniq.astype(float), inverse.ravel(), counts.astype(np.int64)


def _cluster_distances(uniq: np.ndarray) -> np.ndarray:
    diff = uniq[:, None, :] - uniq[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))


def spea2_fitness(objs: np.ndarray, k: int) -> np.ndarray:
    """Per-member fitness: dominator strengths plus 1/(sigma_k + 2) density.

    Members sharing an objective vector share a fitness value; values below
    1.0 mark the non-dominated members.
    """
    n = objs.shape[0]
    if n == 1:
        return np.array([0.5])
    uniq, inverse, counts = _unique_rows(objs)
    le = (uniq[:, None, :] <= uniq[None, :, :]).all(axis=-1)
    dom = le & ~le.T
    counts_f = counts.astype(float)
    strength = dom @ counts_f
    raw = (counts_f * strength) @ dom
    # density: k-th nearest neighbor over individuals, duplicates included
    kk = max(1, min(k, n - 1))
    expanded = np.repeat(_cluster_distances(uniq), counts, axis=1)
    expanded.sort(axis=1)
    sigma = expanded[:, kk]  # column 0 is the self distance
    return (raw + 1.0 / (sigma + 2.0))[inverse]


def nn_truncation(rows: np.ndarray, need: int) -> np.ndarray:
    """Iterative nearest-neighbor removal down to `need` members.

    Exact equivalent of removing, one at a time, the member whose sorted
    distance row is lexicographically smallest, but grouped by identical
    objective vectors: a member of the most-duplicated vector always sorts
    first (its row carries the most leading zeros), so whole clusters can be
    drained before any geometry is compared.
    """
    uniq, inverse, counts = _unique_rows(rows)
    order = np.argsort(inverse, kind="stable")
    members: list[list[int]] = []
    start = 0
    for c in counts:
        members.append([int(i) for i in order[start : start + c]])
        start += c
    d = _cluster_distances(uniq)
    alive = counts.copy()
    total = int(rows.shape[0])

    while total > need and alive.max() > 1:
        cmax = int(alive.max())
        cands = np.flatnonzero(alive == cmax)
        if len(cands) == 1:
            c = int(cands[0])
            held = alive[c]
            alive[c] = -1
            runner_up = int(alive.max()) if len(alive) > 1 else 0
            alive[c] = held
            batch = min(total - need, cmax - max(runner_up, 1))
            del members[c][-batch:]
            alive[c] -= batch
            total -= batch
        else:
            expanded = np.repeat(d[cands], alive, axis=1)
            expanded.sort(axis=1)
            c = int(cands[np.lexsort(expanded.T[::-1])[0]])
            members[c].pop()
            alive[c] -= 1
            total -= 1

    # all survivors unique: classic removal on the remaining singletons
    if total > need:
        live = [int(c) for c in np.flatnonzero(alive == 1)]
        while len(live) > need:
            sub = d[np.ix_(live, live)].copy()
            np.fill_diagonal(sub, np.inf)
            sub.sort(axis=1)
            gone = int(np.lexsort(sub.T[::-1])[0])
            members[live[gone]] = []
            del live[gone]

    kept = sorted(i for group in members for i in group)
    return np.asarray(kept, dtype=np.int64)


def environmental_selection(objs: np.ndarray, capacity: int, k: int):
    """Pick `capacity` members: the non-dominated, truncated or topped up."""
    fitness = spea2_fitness(objs, k)
    nd = np.flatnonzero(fitness < 1.0)
    if len(nd) > capacity:
        keep = nd[nn_truncation(objs[nd], capacity)]
    elif len(nd) < capacity:
        dominated = np.flatnonzero(fitness >= 1.0)
        ranked = dominated[np.argsort(fitness[dominated], kind="stable")]
        keep = np.concatenate([nd, ranked[: capacity - len(nd)]])
    else:
        keep = nd
    return keep, fitness[keep]


def run_spea2(inst: Instance, cfg: AlgoConfig, observer=None) -> RunResult:
    require_algorithm(cfg, Algorithm.SPEA2)
    rng = make_rng(cfg.seed)
    evaluator = Evaluator(inst)
    started = perf_counter()
    k = int(round(math.sqrt(2 * cfg.population)))

    genomes = initial_genomes(cfg, inst, rng)
    objs = evaluator.evaluate_batch(np.stack(genomes))
    keep, fitness = environmental_selection(objs, cfg.population, k)
    genomes = [genomes[i] for i in keep]
    objs = objs[keep]

    while True:
        notify_observer(observer, evaluator, genomes, objs)
        if evaluator.count >= cfg.max_evaluations:
            break

        def better(i: int, j: int) -> bool:
            return fitness[i] < fitness[j]

        winners = tournament_indices(cfg.population, len(genomes), better, rng)
        children = make_offspring(
            [genomes[i] for i in winners], cfg.crossover_prob, cfg.mutation_prob, rng
        )
        child_objs = evaluator.evaluate_batch(np.stack(children))
        union_genomes = genomes + children
        union_objs = np.vstack([objs, child_objs])
        keep, fitness = environmental_selection(union_objs, cfg.population, k)
        genomes = [union_genomes[i] for i in keep]
        objs = union_objs[keep]

    return RunResult(
        front=front_of(genomes, objs),
        evaluations_used=evaluator.count,
        wall_time=perf_counter() - started,
        seed=cfg.seed,
        algorithm=Algorithm.SPEA2,
        instance_name=inst.name,
    )
