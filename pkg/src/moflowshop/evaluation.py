"""Schedule evaluation: completion times and the three minimized objectives.

A solution is one permutation of the jobs, enforced identically on every
machine (no overtaking). Missing operations enter the standard flowshop
recurrence as zero durations: the job still holds its queue slot but passes
through instantly.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .instances import Instance


class ObjectiveVector(NamedTuple):
    """The three minimized objectives of one schedule."""

    makespan: int
    total_completion_time: int  # weighted by job importance
    total_tardiness: int


def check_permutation(order, n_jobs: int) -> np.ndarray:
    arr = np.asarray(order, dtype=np.int64)
    if arr.shape != (n_jobs,):
        raise ValueError(f"permutation length {arr.shape} does not match {n_jobs} jobs")
    seen = np.zeros(n_jobs, dtype=bool)
    valid = (arr >= 0) & (arr < n_jobs)
    if not valid.all():
        raise ValueError("permutation entries must be job indices in [0, n_jobs)")
    seen[arr] = True
    if not seen.all():
        raise ValueError("permutation repeats a job index")
    return arr


def is_permutation(order, n_jobs: int) -> bool:
    try:
        check_permutation(order, n_jobs)
    except ValueError:
        return False
    return True


def completion_times(inst: Instance, order) -> np.ndarray:
    """Completion time of every (job, machine) pair under the permutation.

    Rows are indexed by job (not by queue position). Entry [j, m] is when
    job j leaves machine m: the maximum of its own previous operation and
    the machine's previous job, plus p_jm.
    """
    arr = check_permutation(order, inst.n_jobs)
    p = inst.processing_times
    m = inst.n_machines
    out = np.zeros((inst.n_jobs, m), dtype=np.int64)
    prev = np.zeros(m, dtype=np.int64)
    for job in arr:
        row = p[job]
        c = prev[0] + row[0]
        cur = out[job]
        cur[0] = c
        for mach in range(1, m):
            c = max(c, prev[mach]) + row[mach]
            cur[mach] = c
        prev = cur
    return out


def evaluate(inst: Instance, order) -> ObjectiveVector:
    """Makespan, weighted total completion time, total tardiness.

    Pure function of (instance, permutation); run contexts that need an
    evaluation budget count through Evaluator instead.
    """
    finals = completion_times(inst, order)[:, -1]
    makespan = int(finals.max())
    wtct = int((inst.weights * finals).sum())
    tard = int(np.maximum(finals - inst.due_dates, 0).sum())
    return ObjectiveVector(makespan, wtct, tard)


def dominates(a, b) -> bool:
    """Pareto dominance for minimization: a no worse everywhere, better somewhere."""
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


class Evaluator:
    """Per-run evaluation context: owns the run's evaluation counter.

    The scalar path is tuned for one-offspring-at-a-time algorithms, the
    batch path for generational ones; both compute the identical integers.
    """

    def __init__(self, inst: Instance):
        self.instance = inst
        self.count = 0
        self._rows = [list(map(int, row)) for row in inst.processing_times]
        self._due = [int(d) for d in inst.due_dates]
        self._weights = [int(w) for w in inst.weights]
        self._m = inst.n_machines
        self._n = inst.n_jobs
        # machine-major copy so the batch sweep gathers contiguous slices
        self._by_machine = np.ascontiguousarray(inst.processing_times.T)
        self._due_arr = inst.due_dates
        self._weight_arr = inst.weights

    def evaluate(self, order: Sequence[int]) -> ObjectiveVector:
        self.count += 1
        m = self._m
        rows = self._rows
        prev = [0] * m
        makespan = 0
        wtct = 0
        tard = 0
        for job in order:
            row = rows[job]
            c = prev[0] + row[0]
            cur = [c]
            append = cur.append
            for mach in range(1, m):
                pm = prev[mach]
                if pm > c:
                    c = pm
                c += row[mach]
                append(c)
            prev = cur
            if c > makespan:
                makespan = c
            wtct += self._weights[job] * c
            over = c - self._due[job]
            if over > 0:
                tard += over
        return ObjectiveVector(makespan, wtct, tard)

    def evaluate_batch(self, orders) -> np.ndarray:
        """Objective rows for a stack of permutations, shape (k, 3) int64."""
        orders = np.asarray(orders, dtype=np.int64)
        if orders.ndim == 1:
            orders = orders[None, :]
        k, n = orders.shape
        if n != self._n:
            raise ValueError("permutation length does not match instance")
        self.count += k
        m = self._m
        by_machine = self._by_machine
        prev = [np.zeros(k, dtype=np.int64) for _ in range(m)]
        makespan = np.zeros(k, dtype=np.int64)
        wtct = np.zeros(k, dtype=np.int64)
        tard = np.zeros(k, dtype=np.int64)
        for pos in range(n):
            jobs = orders[:, pos]
            c = prev[0] + by_machine[0][jobs]
            cur = [c]
            for mach in range(1, m):
                c = np.maximum(c, prev[mach]) + by_machine[mach][jobs]
                cur.append(c)
            prev = cur
            np.maximum(makespan, c, out=makespan)
            wtct += self._weight_arr[jobs] * c
            tard += np.maximum(c - self._due_arr[jobs], 0)
        return np.stack([makespan, wtct, tard], axis=1)
