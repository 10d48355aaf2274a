"""Flowshop problem instances: generation, validation, text serialization.

An instance is a jobs-by-machines matrix of integer processing times where a
zero entry means the job skips that machine (a missing operation), plus per
job due dates and importance weights. Generated instances draw each entry in
two stages: a Bernoulli(missing_prob) decision for "missing", otherwise a
uniform integer in [1, 100].
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .seeding import purpose_rng

MAX_PROCESSING_TIME = 100

# purpose tags for the per-field random streams; adding a new field means
# adding a new tag, never re-reading an existing stream
_STREAM_MATRIX = 1
_STREAM_DUE_DATES = 2
_STREAM_WEIGHTS = 3

_REDRAW_LIMIT = 1000

_NAME_PERCENT = re.compile(r"-(\d+)%$")


class InstanceFormatError(ValueError):
    """Instance text rejected, with a 1-based line/column location."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True, eq=False)
class Instance:
    """One scheduling problem: n_jobs jobs crossing n_machines machines.

    processing_times[j, m] is how long job j occupies machine m; zero means
    the operation is missing. due_dates and weights are per job.
    """

    name: str
    n_jobs: int
    n_machines: int
    processing_times: np.ndarray
    due_dates: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.processing_times, dtype=np.int64)
        due = np.asarray(self.due_dates, dtype=np.int64)
        weights = np.asarray(self.weights, dtype=np.int64)
        object.__setattr__(self, "processing_times", times)
        object.__setattr__(self, "due_dates", due)
        object.__setattr__(self, "weights", weights)
        if self.n_jobs < 1 or self.n_machines < 1:
            raise ValueError("need at least one job and one machine")
        if times.shape != (self.n_jobs, self.n_machines):
            raise ValueError(
                f"processing matrix shape {times.shape} does not match "
                f"{self.n_jobs} jobs x {self.n_machines} machines"
            )
        if times.min() < 0 or times.max() > MAX_PROCESSING_TIME:
            raise ValueError(f"processing times must lie in [0, {MAX_PROCESSING_TIME}]")
        if not times.any():
            raise ValueError("degenerate instance: every processing time is zero")
        if due.shape != (self.n_jobs,):
            raise ValueError("due date vector length does not match job count")
        if due.min() < 0:
            raise ValueError("due dates must be non-negative")
        if weights.shape != (self.n_jobs,):
            raise ValueError("weight vector length does not match job count")
        if weights.min() < 1:
            raise ValueError("weights must be >= 1")

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.name == other.name
            and self.n_jobs == other.n_jobs
            and self.n_machines == other.n_machines
            and np.array_equal(self.processing_times, other.processing_times)
            and np.array_equal(self.due_dates, other.due_dates)
            and np.array_equal(self.weights, other.weights)
        )

    @property
    def job_work(self) -> np.ndarray:
        """Total processing time of each job across all machines."""
        return self.processing_times.sum(axis=1)


@dataclass(frozen=True)
class GeneratorConfig:
    n_jobs: int
    n_machines: int
    missing_prob: float
    seed: int
    due_date_tightness: tuple[float, float] = (1.0, 2.0)
    weight_range: tuple[int, int] = (1, 10)

    def __post_init__(self):
        if self.n_jobs < 1 or self.n_machines < 1:
            raise ValueError("need at least one job and one machine")
        if not 0.0 <= self.missing_prob <= 1.0:
            raise ValueError("missing_prob must lie in [0, 1]")
        lo, hi = self.due_date_tightness
        if lo < 0 or lo > hi:
            raise ValueError("due_date_tightness must satisfy 0 <= lo <= hi")
        w_lo, w_hi = self.weight_range
        if w_lo < 1 or w_lo > w_hi:
            raise ValueError("weight_range must satisfy 1 <= lo <= hi")


def instance_name(n: int, m: int, p: float) -> str:
    """Display name '{n}Jx{m}M-{percent}%' for a missing-op share p in [0,1]."""
    if n < 1 or m < 1:
        raise ValueError("need at least one job and one machine")
    if not 0.0 <= p <= 1.0:
        raise ValueError("missing-operation probability must lie in [0, 1]")
    return f"{n}Jx{m}M-{round(100 * p)}%"


def generate_instance(cfg: GeneratorConfig) -> Instance:
    """Draw an instance deterministically from cfg.

    Matrix, due dates and weights come from three separate streams keyed to
    cfg.seed, so extending the format never perturbs earlier fields. Due
    dates are d_j = round(u_j * total work of job j) with u_j uniform in the
    tightness interval.
    """
    if cfg.missing_prob >= 1.0:
        raise ValueError("missing_prob = 1 cannot produce a non-degenerate instance")
    shape = (cfg.n_jobs, cfg.n_machines)
    matrix_rng = purpose_rng(cfg.seed, _STREAM_MATRIX)
    for _ in range(_REDRAW_LIMIT):
        missing = matrix_rng.random(shape)
        values = matrix_rng.integers(1, MAX_PROCESSING_TIME + 1, size=shape, dtype=np.int64)
        times = np.where(missing < cfg.missing_prob, 0, values)
        if times.any():
            break
    else:
        raise ValueError("could not draw a non-degenerate matrix (missing_prob too high)")

    lo, hi = cfg.due_date_tightness
    due_rng = purpose_rng(cfg.seed, _STREAM_DUE_DATES)
    slack = due_rng.uniform(lo, hi, size=cfg.n_jobs)
    due = np.rint(slack * times.sum(axis=1)).astype(np.int64)

    w_lo, w_hi = cfg.weight_range
    weight_rng = purpose_rng(cfg.seed, _STREAM_WEIGHTS)
    weights = weight_rng.integers(w_lo, w_hi + 1, size=cfg.n_jobs, dtype=np.int64)

    return Instance(
        name=instance_name(cfg.n_jobs, cfg.n_machines, cfg.missing_prob),
        n_jobs=cfg.n_jobs,
        n_machines=cfg.n_machines,
        processing_times=times,
        due_dates=due,
        weights=weights,
    )


def serialize_instance(inst: Instance) -> str:
    """Plain text form; see parse_instance for the layout."""
    match = _NAME_PERCENT.search(inst.name)
    if match:
        percent = int(match.group(1))
    else:
        zero_share = 1.0 - inst.processing_times.astype(bool).mean()
        percent = round(100 * zero_share)
    lines = [inst.name, f"{inst.n_jobs} {inst.n_machines} {percent}"]
    for row in inst.processing_times:
        lines.append(" ".join(str(int(v)) for v in row))
    lines.append(" ".join(str(int(v)) for v in inst.due_dates))
    lines.append(" ".join(str(int(v)) for v in inst.weights))
    return "\n".join(lines) + "\n"


def _tokens(raw_line: str):
    return [(match.start() + 1, match.group()) for match in re.finditer(r"\S+", raw_line)]


def _int_tokens(lineno, raw_line, count, what, low, high):
    toks = _tokens(raw_line)
    if len(toks) != count:
        col = toks[count][0] if len(toks) > count else len(raw_line) + 1
        raise InstanceFormatError(
            lineno, col, f"expected {count} {what} values, found {len(toks)}"
        )
    out = []
    for col, tok in toks:
        try:
            value = int(tok)
        except ValueError:
            raise InstanceFormatError(lineno, col, f"non-integer token {tok!r}") from None
        if value < low or (high is not None and value > high):
            bound = f"[{low}, {high}]" if high is not None else f">= {low}"
            raise InstanceFormatError(lineno, col, f"{what} value {value} outside {bound}")
        out.append(value)
    return out


def parse_instance(text: str) -> Instance:
    """Parse the text form of an instance.

    Layout: line 1 name; line 2 'n m p_percent'; n rows of m processing
    times; one row of n due dates; one row of n weights. Errors carry the
    offending 1-based line and column.
    """
    lines = text.splitlines()

    def line_at(idx, what):
        if idx >= len(lines):
            raise InstanceFormatError(len(lines) + 1, 1, f"unexpected end of input, expected {what}")
        return lines[idx]

    name = line_at(0, "instance name").strip()
    if not name:
        raise InstanceFormatError(1, 1, "empty instance name")

    header = _int_tokens(2, line_at(1, "header 'n m p_percent'"), 3, "header", 0, None)
    n, m, percent = header
    if n < 1:
        raise InstanceFormatError(2, 1, "job count must be >= 1")
    if m < 1:
        raise InstanceFormatError(2, 1, "machine count must be >= 1")
    if percent > 100:
        raise InstanceFormatError(2, 1, f"missing-operation percent {percent} outside [0, 100]")

    rows = []
    for j in range(n):
        raw = line_at(2 + j, f"processing row {j + 1} of {n}")
        rows.append(_int_tokens(3 + j, raw, m, "processing time", 0, MAX_PROCESSING_TIME))
    due = _int_tokens(3 + n, line_at(2 + n, "due date row"), n, "due date", 0, None)
    weights = _int_tokens(4 + n, line_at(3 + n, "weight row"), n, "weight", 1, None)

    for extra in range(4 + n, len(lines)):
        if lines[extra].strip():
            raise InstanceFormatError(extra + 1, 1, "unexpected trailing content")

    try:
        return Instance(
            name=name,
            n_jobs=n,
            n_machines=m,
            processing_times=np.array(rows, dtype=np.int64),
            due_dates=np.array(due, dtype=np.int64),
            weights=np.array(weights, dtype=np.int64),
        )
    except ValueError as exc:
        raise InstanceFormatError(3, 1, str(exc)) from None


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_instance(inst))
