"""Pareto-front bookkeeping and the two quality indicators.

Fronts hold (objective vector, permutation) pairs deduplicated on the
objective vector. Indicators run in objective space normalized by a
reference front's ideal/nadir box, so they are scale-free; hypervolume uses
the fixed reference point (1.1, 1.1, 1.1) in that normalized space.
"""

from __future__ import annotations

import csv
import io
import logging
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .evaluation import ObjectiveVector

log = logging.getLogger(__name__)

FRONT_CSV_COLUMNS = ("makespan", "wtct", "tardiness", "permutation")
HV_REFERENCE_POINT = (1.1, 1.1, 1.1)


def nondominated_mask(rows: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row (minimization)."""
    rows = np.asarray(rows)
    n = len(rows)
    if n == 0:
        return np.zeros(0, dtype=bool)
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    le = (uniq[:, None, :] <= uniq[None, :, :]).all(axis=2)
    dom = le & ~le.T
    clean = ~dom.any(axis=0)
    return clean[inverse.ravel()]


class ParetoFront:
    """Non-dominated, objective-deduplicated set of solutions.

    Points are stored sorted by objective vector so two fronts with the same
    content serialize identically regardless of construction order. When
    several solutions share an objective vector the first one supplied wins.
    """

    __slots__ = ("points",)

    def __init__(self, pairs: Iterable[tuple] = ()):
        chosen: dict[ObjectiveVector, tuple[int, ...]] = {}
        for objectives, permutation in pairs:
            vec = ObjectiveVector(*map(int, objectives))
            if vec not in chosen:
                chosen[vec] = tuple(int(v) for v in permutation)
        if chosen:
            vectors = list(chosen)
            mask = nondominated_mask(np.asarray(vectors, dtype=np.int64))
            kept = [vec for vec, keep in zip(vectors, mask) if keep]
            self.points = tuple(sorted((vec, chosen[vec]) for vec in kept))
        else:
            self.points = ()

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, ParetoFront):
            return NotImplemented
        return self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"ParetoFront({len(self.points)} points)"

    @property
    def objective_vectors(self) -> tuple[ObjectiveVector, ...]:
        return tuple(vec for vec, _ in self.points)

    def objective_rows(self) -> np.ndarray:
        if not self.points:
            return np.empty((0, 3), dtype=np.int64)
        return np.asarray([vec for vec, _ in self.points], dtype=np.int64)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(FRONT_CSV_COLUMNS)
        for vec, perm in self.points:
            writer.writerow([vec[0], vec[1], vec[2], "-".join(str(v) for v in perm)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ParetoFront":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or tuple(header) != FRONT_CSV_COLUMNS:
            raise ValueError(f"front CSV must start with header {','.join(FRONT_CSV_COLUMNS)}")
        pairs = []
        for row in reader:
            if not row:
                continue
            if len(row) != 4:
                raise ValueError(f"front CSV row has {len(row)} fields, expected 4")
            perm = tuple(int(v) for v in row[3].split("-")) if row[3] else ()
            pairs.append(((int(row[0]), int(row[1]), int(row[2])), perm))
        return cls(pairs)


def consolidate(fronts: Iterable[ParetoFront]) -> ParetoFront:
    """Dominance-filtered, deduplicated union of several fronts."""
    def pairs():
        for front in fronts:
            yield from front.points

    return ParetoFront(pairs())


@dataclass(frozen=True)
class ReferenceFront:
    """A front promoted to the normalization yardstick for indicators."""

    points: ParetoFront
    ideal: ObjectiveVector
    nadir: ObjectiveVector

    @classmethod
    def of(cls, front: ParetoFront) -> "ReferenceFront":
        if len(front) == 0:
            raise ValueError("reference front must be nonempty")
        rows = front.objective_rows()
        ideal = ObjectiveVector(*(int(v) for v in rows.min(axis=0)))
        nadir = ObjectiveVector(*(int(v) for v in rows.max(axis=0)))
        return cls(points=front, ideal=ideal, nadir=nadir)


def normalize(front: ParetoFront, ref: ReferenceFront) -> np.ndarray:
    """Map objective rows into [0,1]^3 using ref's ideal/nadir box.

    Zero-range objectives map to 0. Values that escape the box clamp to
    [0, 1] with a logged warning (they belong to fronts the reference was
    not built from).
    """
    rows = front.objective_rows().astype(float)
    ideal = np.asarray(ref.ideal, dtype=float)
    span = np.asarray(ref.nadir, dtype=float) - ideal
    if len(rows) == 0:
        return np.empty((0, 3))
    if not span.any():
        log.warning("degenerate reference front (single point); normalizing to all-zero")
        return np.zeros_like(rows)
    safe = np.where(span > 0, span, 1.0)
    out = (rows - ideal) / safe
    out[:, span == 0] = 0.0
    if out.min() < 0.0 or out.max() > 1.0:
        log.warning("normalized objectives escape [0,1]; clamping")
        out = np.clip(out, 0.0, 1.0)
    return out


def hypervolume3(points, ref_point=HV_REFERENCE_POINT) -> float:
    """Exact dominated volume of a 3D minimization point set up to ref_point.

    Dimension sweep: points are processed in ascending third coordinate
    while a 2D staircase tracks the area they dominate in the first two;
    volume accumulates slab by slab. Points beyond ref_point are dropped
    with a warning.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return 0.0
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("expected an (n, 3) point set")
    ref = np.asarray(ref_point, dtype=float)
    inside = (pts <= ref).all(axis=1)
    if not inside.all():
        log.warning("dropping %d points beyond the reference point", int((~inside).sum()))
        pts = pts[inside]
    if len(pts) == 0:
        return 0.0
    rx, ry, rz = float(ref[0]), float(ref[1]), float(ref[2])
    order = np.lexsort((pts[:, 0], pts[:, 1], pts[:, 2]))
    xs: list[float] = []  # staircase x ascending ...
    ys: list[float] = []  # ... with y strictly descending
    area = 0.0
    volume = 0.0
    z_prev = float(pts[order[0], 2])
    for idx in order:
        x, y, z = (float(v) for v in pts[idx])
        volume += area * (z - z_prev)
        z_prev = z
        i = bisect_left(xs, x)
        if i > 0 and ys[i - 1] <= y:
            continue  # dominated in 2D by a staircase point left of x
        if i < len(xs) and xs[i] == x and ys[i] <= y:
            continue  # same x, existing point at least as low
        j = i
        while j < len(xs) and ys[j] >= y:
            j += 1
        x_right = xs[j] if j < len(xs) else rx
        old = 0.0
        if i > 0:
            left_end = xs[i] if i < j else x_right
            old += (left_end - x) * (ry - ys[i - 1])
        for k in range(i, j):
            seg_end = xs[k + 1] if k + 1 < j else x_right
            old += (seg_end - xs[k]) * (ry - ys[k])
        area += (x_right - x) * (ry - y) - old
        del xs[i:j]
        del ys[i:j]
        xs.insert(i, x)
        ys.insert(i, y)
    volume += area * (rz - z_prev)
    return volume


def relative_hypervolume(front: ParetoFront, ref: ReferenceFront) -> float:
    """Hypervolume of the front over hypervolume of the reference front.

    Both are normalized into ref's box first and measured against
    HV_REFERENCE_POINT, so 1.0 means the front covers the reference.
    """
    if len(ref.points) == 0:
        raise ValueError("reference front is empty")
    hv_ref = hypervolume3(normalize(ref.points, ref))
    if hv_ref == 0.0:
        raise ValueError("reference front has zero hypervolume")
    return hypervolume3(normalize(front, ref)) / hv_ref


@dataclass(frozen=True)
class SpreadTerms:
    """Intermediate quantities of the spread indicator (normalized space)."""

    extreme_dists: tuple[float, ...]
    neighbor_dists: tuple[float, ...]
    mean_neighbor: float
    objectives: tuple[int, ...] = (0, 1, 2)


def spread_terms(front: ParetoFront, ref: ReferenceFront) -> SpreadTerms:
    if len(front) == 0:
        raise ValueError("spread of an empty front is undefined")
    f_norm = normalize(front, ref)
    r_norm = normalize(ref.points, ref)
    r_rows = ref.points.objective_rows()

    extreme_dists = []
    for o in range(3):
        best = np.flatnonzero(r_rows[:, o] == r_rows[:, o].min())
        # ties resolved by lexicographically smallest raw vector
        pick = best[np.lexsort((r_rows[best, 2], r_rows[best, 1], r_rows[best, 0]))[0]]
        gaps = np.linalg.norm(f_norm - r_norm[pick], axis=1)
        extreme_dists.append(float(gaps.min()))

    if len(front) == 1:
        neighbor = ()
        mean = 0.0
    else:
        diff = f_norm[:, None, :] - f_norm[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        np.fill_diagonal(dist, np.inf)
        nearest = dist.min(axis=1)
        neighbor = tuple(float(v) for v in nearest)
        mean = float(nearest.mean())
    return SpreadTerms(
        extreme_dists=tuple(extreme_dists),
        neighbor_dists=neighbor,
        mean_neighbor=mean,
    )


def spread(front: ParetoFront, ref: ReferenceFront) -> float:
    """Diversity indicator: 0 is perfectly uniform with extremes covered.

    (sum of extreme-point gaps + sum |mean - d_i|) over
    (sum of extreme-point gaps + n * mean), with d_i the nearest-neighbor
    distances inside the front. A single-point front scores 1.0 by
    convention.
    """
    if len(front) == 0:
        raise ValueError("spread of an empty front is undefined")
    if len(front) == 1:
        return 1.0
    terms = spread_terms(front, ref)
    d_e = sum(terms.extreme_dists)
    deviations = sum(abs(terms.mean_neighbor - d) for d in terms.neighbor_dists)
    denom = d_e + len(front) * terms.mean_neighbor
    if denom == 0.0:
        # every point collapsed onto the matched extremes; perfectly uniform
        return 0.0
    return (d_e + deviations) / denom
