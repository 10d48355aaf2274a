"""Reference-direction solver: rank selection with niche-preserving truncation."""

from __future__ import annotations

from time import perf_counter

import numpy as np

from ..core import crowding_distance, sort_objective_rows
from ..evaluation import Evaluator
from ..instances import Instance
from ..seeding import make_rng
from .common import (
    das_dennis3,
    front_of,
    initial_genomes,
    lattice_count,
    make_offspring,
    notify_observer,
    require_algorithm,
    tournament_indices,
)
from .config import AlgoConfig, Algorithm, RunResult
from .nsga2 import rank_then_crowding


def reference_directions(population: int) -> np.ndarray:
    """Largest simplex lattice whose point count does not exceed the population."""
    h = 1
    while lattice_count(h + 1) <= population:
        h += 1
    return das_dennis3(h)


def normalize_block(rows: np.ndarray) -> np.ndarray:
    """Translate by the ideal point and scale by achievement-based intercepts.

    Extremes minimize the weighted-max scalarization along each axis; the
    hyperplane through them gives the intercepts. Falls back to per-objective
    spans when the extreme system is singular or produces unusable intercepts.
    """
    f = rows.astype(float)
    t = f - f.min(axis=0)
    extreme_rows = np.empty((3, 3))
    for axis in range(3):
        w = np.full(3, 1e-6)
        w[axis] = 1.0
        extreme_rows[axis] = t[np.argmin((t / w).max(axis=1))]
    intercepts = None
    try:
        plane = np.linalg.solve(extreme_rows, np.ones(3))
        with np.errstate(divide="ignore"):
            candidate = 1.0 / plane
        if np.all(np.isfinite(candidate)) and np.all(candidate > 1e-12):
            intercepts = candidate
    except np.linalg.LinAlgError:
        intercepts = None
    if intercepts is None:
        intercepts = t.max(axis=0)
    intercepts = np.where(intercepts > 1e-12, intercepts, 1.0)
    return t / intercepts


def associate(normalized: np.ndarray, directions: np.ndarray):
    """Closest reference direction per row by perpendicular distance."""
    unit = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    proj = normalized @ unit.T
    sq = (normalized * normalized).sum(axis=1, keepdims=True) - proj * proj
    sq = np.maximum(sq, 0.0)
    idx = sq.argmin(axis=1)
    dist = np.sqrt(sq[np.arange(normalized.shape[0]), idx])
    return idx, dist


def _niche_fill(need, rho, cand_dirs, cand_dist, rng) -> list[int]:
    """Pick `need` candidate positions, feeding the emptiest niches first."""
    chosen: list[int] = []
    available = np.ones(len(cand_dirs), dtype=bool)
    active = np.ones(len(rho), dtype=bool)
    while len(chosen) < need:
        live = np.flatnonzero(active)
        lowest = live[rho[live] == rho[live].min()]
        j = int(lowest[rng.integers(len(lowest))]) if len(lowest) > 1 else int(lowest[0])
        members = np.flatnonzero(available & (cand_dirs == j))
        if len(members) == 0:
            active[j] = False
            continue
        if rho[j] == 0:
            pick = int(members[np.argmin(cand_dist[members])])
        elif len(members) > 1:
            pick = int(members[rng.integers(len(members))])
        else:
            pick = int(members[0])
        chosen.append(pick)
        available[pick] = False
        rho[j] += 1
    return chosen


def niching_selection(all_objs: np.ndarray, capacity: int, directions, rng):
    """Keep `capacity` members by rank; split the last front by niche counts.

    Also reports crowding (computed per full front) so mating can reuse the
    rank-then-crowding comparator.
    """
    keep: list[int] = []
    ranks: list[int] = []
    crowds: list[float] = []
    for rank, fr in enumerate(sort_objective_rows(all_objs)):
        cd = crowding_distance(all_objs[fr])
        room = capacity - len(keep)
        if len(fr) <= room:
            keep.extend(int(i) for i in fr)
            ranks.extend([rank] * len(fr))
            crowds.extend(float(v) for v in cd)
            if len(keep) == capacity:
                break
            continue
        pool = np.concatenate([np.asarray(keep, dtype=np.int64), fr])
        fn = normalize_block(all_objs[pool])
        assoc, dist = associate(fn, directions)
        rho = np.bincount(assoc[: len(keep)], minlength=len(directions))
        offset = len(keep)
        picked = _niche_fill(room, rho, assoc[offset:], dist[offset:], rng)
        survivors = np.sort(fr[np.asarray(picked, dtype=np.int64)])
        positions = {int(v): p for p, v in enumerate(fr)}
        keep.extend(int(i) for i in survivors)
        ranks.extend([rank] * room)
        crowds.extend(float(cd[positions[int(i)]]) for i in survivors)
        break
    return keep, np.asarray(ranks), np.asarray(crowds)


def run_nsga3(inst: Instance, cfg: AlgoConfig, observer=None) -> RunResult:
    require_algorithm(cfg, Algorithm.NSGA3)
    rng = make_rng(cfg.seed)
    evaluator = Evaluator(inst)
    started = perf_counter()
    directions = reference_directions(cfg.population)

    genomes = initial_genomes(cfg, inst, rng)
    objs = evaluator.evaluate_batch(np.stack(genomes))
    keep, ranks, crowds = niching_selection(objs, cfg.population, directions, rng)
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
        keep, ranks, crowds = niching_selection(merged_objs, cfg.population, directions, rng)
        genomes = [merged_genomes[i] for i in keep]
        objs = merged_objs[keep]

    return RunResult(
        front=front_of(genomes, objs),
        evaluations_used=evaluator.count,
        wall_time=perf_counter() - started,
        seed=cfg.seed,
        algorithm=Algorithm.NSGA3,
        instance_name=inst.name,
    )
