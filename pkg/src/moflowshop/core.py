"""Machinery shared by all four solvers: genomes, variation, sorting, diversity.

Genomes are job permutations as int64 numpy arrays. Every operator is closed
over valid permutations; debug builds assert it on each application.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .evaluation import ObjectiveVector, is_permutation


@dataclass
class Individual:
    genome: np.ndarray
    objectives: Optional[ObjectiveVector] = None


@dataclass
class Population:
    members: list[Individual]
    capacity: int


def init_population(capacity: int, n_jobs: int, rng: np.random.Generator) -> Population:
    """capacity independent uniform permutations (Fisher-Yates via numpy)."""
    if capacity < 1 or n_jobs < 1:
        raise ValueError("capacity and n_jobs must be >= 1")
    members = [
        Individual(genome=rng.permutation(n_jobs).astype(np.int64))
        for _ in range(capacity)
    ]
    return Population(members=members, capacity=capacity)


def _pmx_child(seg_parent: np.ndarray, fill_parent: np.ndarray, lo: int, hi: int) -> np.ndarray:
    n = len(seg_parent)
    child = np.empty(n, dtype=np.int64)
    child[lo:hi] = seg_parent[lo:hi]
    slot_of = {int(v): lo + i for i, v in enumerate(seg_parent[lo:hi])}
    fill = fill_parent.tolist()
    for pos in range(n):
        if lo <= pos < hi:
            continue
        v = fill[pos]
        while v in slot_of:
            v = fill[slot_of[v]]
        child[pos] = v
    return child


def pmx_crossover(a, b, rng: np.random.Generator):
    """Partially mapped crossover with two uniform cut points 0 <= lo < hi <= n.

    child1 keeps a[lo:hi] verbatim and fills the rest from b, chasing values
    that collide with the copied segment through the a[i] <-> b[i] mapping;
    child2 swaps the parent roles. Callers gate application with their
    crossover probability; this function always recombines.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = len(a)
    if len(b) != n:
        raise ValueError("parent length mismatch")
    if n < 2:
        raise ValueError("crossover needs permutations of length >= 2")
    first, second = rng.choice(n + 1, size=2, replace=False)
    lo, hi = (first, second) if first < second else (second, first)
    c1 = _pmx_child(a, b, lo, hi)
    c2 = _pmx_child(b, a, lo, hi)
    assert is_permutation(c1, n) and is_permutation(c2, n)
    return c1, c2


def swap_mutation(p, rng: np.random.Generator) -> np.ndarray:
    """Exchange two distinct uniformly chosen positions; returns a copy."""
    p = np.asarray(p, dtype=np.int64)
    n = len(p)
    if n < 2:
        raise ValueError("swap mutation needs length >= 2")
    i, j = rng.choice(n, size=2, replace=False)
    out = p.copy()
    out[i], out[j] = out[j], out[i]
    assert is_permutation(out, n)
    return out


def sort_objective_rows(objs: np.ndarray) -> list[np.ndarray]:
    """Non-dominated sorting over an (n, 3) objective matrix.

    Returns fronts as arrays of row indices (ascending within each front).
    Duplicate rows are compressed first so cost scales with the number of
    distinct vectors.
    """
    objs = np.asarray(objs)
    n = len(objs)
    if n == 0:
        return []
    uniq, inverse = np.unique(objs, axis=0, return_inverse=True)
    u = len(uniq)
    le = (uniq[:, None, :] <= uniq[None, :, :]).all(axis=2)
    dom = le & ~le.T  # dom[i, j]: unique i dominates unique j
    dominator_count = dom.sum(axis=0)
    rank_u = np.full(u, -1, dtype=np.int64)
    remaining = dominator_count.copy()
    assigned = np.zeros(u, dtype=bool)
    rank = 0
    while not assigned.all():
        current = ~assigned & (remaining == 0)
        if not current.any():  # pragma: no cover - peeling always progresses
            raise RuntimeError("non-dominated sort failed to progress")
        rank_u[current] = rank
        assigned |= current
        remaining = remaining - dom[current].sum(axis=0)
        rank += 1
    ranks = rank_u[inverse.ravel()]
    return [np.flatnonzero(ranks == r) for r in range(rank)]


def fast_nondominated_sort(pop: Population) -> list[list[int]]:
    """Fronts of member indices; front 0 holds every non-dominated member."""
    rows = []
    for k, ind in enumerate(pop.members):
        if ind.objectives is None:
            raise ValueError(f"member {k} has not been evaluated")
        rows.append(ind.objectives)
    fronts = sort_objective_rows(np.asarray(rows, dtype=np.int64))
    return [[int(i) for i in front] for front in fronts]


def crowding_distance(front) -> np.ndarray:
    """Crowding of each vector within one front.

    Boundary points per objective get +inf; interior points accumulate the
    normalized gap between their sorted neighbors. Objectives with zero
    range are skipped entirely. Fronts of size <= 2 are all-boundary.
    """
    arr = np.asarray(front, dtype=float)
    n = len(arr)
    if n == 0:
        return np.empty(0)
    if n <= 2:
        return np.full(n, np.inf)
    dist = np.zeros(n)
    for o in range(arr.shape[1]):
        vals = arr[:, o]
        order = np.argsort(vals, kind="stable")
        span = vals[order[-1]] - vals[order[0]]
        if span == 0:
            continue
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        dist[order[1:-1]] += (vals[order[2:]] - vals[order[:-2]]) / span
    return dist


def prefer_first(first, second, better: Callable) -> bool:
    """Tournament rule: the first pick wins unless the second is strictly better."""
    return not (better(second, first) and not better(first, second))


def binary_tournament(pop: Population, better: Callable, rng: np.random.Generator) -> Individual:
    """Two uniform picks with replacement; ties keep the first pick."""
    members = pop.members
    if not members:
        raise ValueError("empty population")
    i, j = rng.integers(0, len(members), size=2)
    first, second = members[int(i)], members[int(j)]
    return first if prefer_first(first, second, better) else second
