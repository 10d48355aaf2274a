"""Batch harness: seeded replications, reference fronts, CSV/JSON outputs."""

from __future__ import annotations

import csv
import io
import json
import re
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .algorithms import AlgoConfig, Algorithm, run_algorithm
from .instances import (
    GeneratorConfig,
    Instance,
    generate_instance,
    instance_name,
    load_instance,
)
from .metrics import (
    HV_REFERENCE_POINT,
    ParetoFront,
    ReferenceFront,
    consolidate,
    relative_hypervolume,
    spread,
)
from .seeding import fnv1a64, mix64

RUNS_CSV_COLUMNS = (
    "instance",
    "algorithm",
    "replication",
    "seed",
    "status",
    "rhv",
    "spread",
    "evaluations",
    "wall_time_s",
    "front_file",
)
CONSOLIDATED_CSV_COLUMNS = (
    "instance",
    "algorithm",
    "points",
    "rhv",
    "spread",
    "front_file",
    "reference_file",
)

_SAFE_CHARS = re.compile(r"[^A-Za-z0-9._-]")


def safe_file_name(name: str) -> str:
    """File-system-safe variant of an instance name ('%' reads as 'pct')."""
    return _SAFE_CHARS.sub("_", name.replace("%", "pct"))


def run_seed(base_seed: int, instance: str, algorithm: Algorithm, replication: int) -> int:
    """Per-run seed; pure in its arguments so any run can be re-derived alone."""
    return mix64(base_seed, fnv1a64(instance.encode()), algorithm.ordinal, replication)


@dataclass(frozen=True)
class InstanceSpec:
    """One experiment instance: either a file to load or a config to generate."""

    file: str | None = None
    generate: GeneratorConfig | None = None

    def __post_init__(self):
        if (self.file is None) == (self.generate is None):
            raise ValueError("specify exactly one of file= or generate=")

    def resolve(self) -> Instance:
        if self.file is not None:
            return load_instance(self.file)
        return generate_instance(self.generate)

    def to_dict(self) -> dict:
        if self.file is not None:
            return {"file": self.file}
        g = self.generate
        return {
            "generate": {
                "n_jobs": g.n_jobs,
                "n_machines": g.n_machines,
                "missing_prob": g.missing_prob,
                "seed": g.seed,
                "due_date_tightness": list(g.due_date_tightness),
                "weight_range": list(g.weight_range),
            }
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceSpec":
        if "file" in data and "generate" in data:
            raise ValueError("instance entry has both file and generate")
        if "file" in data:
            return cls(file=str(data["file"]))
        if "generate" in data:
            g = dict(data["generate"])
            if "due_date_tightness" in g:
                g["due_date_tightness"] = tuple(g["due_date_tightness"])
            if "weight_range" in g:
                g["weight_range"] = tuple(g["weight_range"])
            return cls(generate=GeneratorConfig(**g))
        raise ValueError("instance entry needs file= or generate=")


def _config_to_dict(cfg: AlgoConfig) -> dict:
    return {
        "algorithm": cfg.algorithm.value,
        "population": cfg.population,
        "crossover_prob": cfg.crossover_prob,
        "mutation_prob": cfg.mutation_prob,
        "max_evaluations": cfg.max_evaluations,
        "neighborhood_frac": cfg.neighborhood_frac,
    }


def _config_from_dict(data: dict) -> AlgoConfig:
    fields = dict(data)
    fields["algorithm"] = Algorithm.parse(fields["algorithm"])
    fields.pop("seed", None)  # seeds are derived per run, never stored
    return AlgoConfig(**fields)


@dataclass(frozen=True)
class ExperimentPlan:
    instances: tuple[InstanceSpec, ...]
    algorithms: tuple[AlgoConfig, ...]
    output_dir: str
    replications: int = 30
    base_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "instances", tuple(self.instances))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        if not self.instances:
            raise ValueError("plan lists no instances")
        if not self.algorithms:
            raise ValueError("plan lists no algorithms")
        kinds = [cfg.algorithm for cfg in self.algorithms]
        if len(set(kinds)) != len(kinds):
            # duplicate kinds would collide in run_seed and waste replications
            raise ValueError("plan repeats an algorithm kind")

    def to_dict(self) -> dict:
        return {
            "instances": [spec.to_dict() for spec in self.instances],
            "algorithms": [_config_to_dict(cfg) for cfg in self.algorithms],
            "output_dir": self.output_dir,
            "replications": self.replications,
            "base_seed": self.base_seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentPlan":
        try:
            return cls(
                instances=tuple(InstanceSpec.from_dict(e) for e in data["instances"]),
                algorithms=tuple(_config_from_dict(e) for e in data["algorithms"]),
                output_dir=str(data["output_dir"]),
                replications=int(data.get("replications", 30)),
                base_seed=int(data.get("base_seed", 0)),
            )
        except KeyError as missing:
            raise ValueError(f"plan is missing required key {missing}") from None


def load_plan(path) -> ExperimentPlan:
    path = Path(path)
    plan = ExperimentPlan.from_dict(json.loads(path.read_text(encoding="utf-8")))
    # instance files resolve relative to the plan document
    rebased = tuple(
        InstanceSpec(file=str((path.parent / spec.file).resolve()))
        if spec.file is not None and not Path(spec.file).is_absolute()
        else spec
        for spec in plan.instances
    )
    return ExperimentPlan(
        instances=rebased,
        algorithms=plan.algorithms,
        output_dir=plan.output_dir,
        replications=plan.replications,
        base_seed=plan.base_seed,
    )


@dataclass
class ExperimentResult:
    output_dir: Path
    rows: list[dict]
    failures: int
    reference_files: dict[str, str] = field(default_factory=dict)

    @property
    def runs_csv(self) -> Path:
        return self.output_dir / "runs.csv"

    @property
    def consolidated_csv(self) -> Path:
        return self.output_dir / "consolidated.csv"

    @property
    def manifest_path(self) -> Path:
        return self.output_dir / "manifest.json"


def _execute(task):
    inst, cfg = task
    try:
        return "ok", run_algorithm(inst, cfg)
    except Exception as exc:  # partial-failure policy: record, keep going
        return "error", f"{type(exc).__name__}: {exc}"


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _write_csv(path: Path, columns, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8")


def run_experiment(plan: ExperimentPlan, workers: int = 1) -> ExperimentResult:
    """Execute every (instance, algorithm, replication) cell and write outputs.

    Fronts and metric values are identical for any worker count: each run's
    seed comes from run_seed alone, and results are consumed in task order.
    """
    out = Path(plan.output_dir)
    (out / "fronts").mkdir(parents=True, exist_ok=True)
    (out / "reference").mkdir(exist_ok=True)
    (out / "consolidated").mkdir(exist_ok=True)

    instances = [spec.resolve() for spec in plan.instances]
    names = [inst.name for inst in instances]
    if len(set(names)) != len(names):
        raise ValueError("instance names collide within the plan")
    if len({safe_file_name(n) for n in names}) != len(names):
        raise ValueError("instance file names collide after sanitizing")

    tasks = []
    keys = []
    for inst in instances:
        for cfg in plan.algorithms:
            for rep in range(plan.replications):
                seed = run_seed(plan.base_seed, inst.name, cfg.algorithm, rep)
                tasks.append((inst, cfg.with_seed(seed)))
                keys.append((inst.name, cfg.algorithm, rep, seed))

    if workers == 1:
        outcomes = [_execute(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_execute, tasks))

    rows: list[dict] = []
    fronts_by_instance: dict[str, list[int]] = {name: [] for name in names}
    for idx, ((name, algorithm, rep, seed), (status, payload)) in enumerate(
        zip(keys, outcomes)
    ):
        row = {
            "instance": name,
            "algorithm": algorithm.value,
            "replication": rep,
            "seed": seed,
            "status": status,
            "rhv": "",
            "spread": "",
            "evaluations": "",
            "wall_time_s": "",
            "front_file": "",
        }
        if status == "ok":
            front_file = (
                f"fronts/{safe_file_name(name)}_{algorithm.value}_{rep:02d}.csv"
            )
            (out / front_file).write_text(payload.front.to_csv(), encoding="utf-8")
            row["front_file"] = front_file
            row["evaluations"] = payload.evaluations_used
            row["wall_time_s"] = f"{payload.wall_time:.6f}"
            fronts_by_instance[name].append(idx)
        else:
            row["status"] = payload
        rows.append(row)

    references: dict[str, ReferenceFront] = {}
    reference_files: dict[str, str] = {}
    for name in names:
        fed_by = fronts_by_instance[name]
        if not fed_by:
            continue
        union = consolidate(outcomes[i][1].front for i in fed_by)
        references[name] = ReferenceFront.of(union)
        ref_file = f"reference/{safe_file_name(name)}.csv"
        (out / ref_file).write_text(union.to_csv(), encoding="utf-8")
        reference_files[name] = ref_file

    for idx, row in enumerate(rows):
        if row["status"] != "ok":
            continue
        ref = references[row["instance"]]
        front = outcomes[idx][1].front
        row["rhv"] = _fmt(relative_hypervolume(front, ref))
        row["spread"] = _fmt(spread(front, ref))

    _write_csv(
        out / "runs.csv",
        RUNS_CSV_COLUMNS,
        ([row[c] for c in RUNS_CSV_COLUMNS] for row in rows),
    )

    consolidated_rows = []
    for name in names:
        if name not in references:
            continue
        ref = references[name]
        for cfg in plan.algorithms:
            member_runs = [
                outcomes[i][1].front
                for i in fronts_by_instance[name]
                if keys[i][1] is cfg.algorithm
            ]
            if not member_runs:
                continue
            merged = consolidate(member_runs)
            front_file = (
                f"consolidated/{safe_file_name(name)}_{cfg.algorithm.value}.csv"
            )
            (out / front_file).write_text(merged.to_csv(), encoding="utf-8")
            consolidated_rows.append(
                [
                    name,
                    cfg.algorithm.value,
                    len(merged),
                    _fmt(relative_hypervolume(merged, ref)),
                    _fmt(spread(merged, ref)),
                    front_file,
                    reference_files[name],
                ]
            )
    _write_csv(out / "consolidated.csv", CONSOLIDATED_CSV_COLUMNS, consolidated_rows)

    manifest = {
        "plan": plan.to_dict(),
        "constants": {
            "hv_reference_point": list(HV_REFERENCE_POINT),
            "seed_rule": (
                "mix64(base_seed, fnv1a64(instance_name), algorithm_ordinal,"
                " replication)"
            ),
            "algorithm_ordinals": {a.value: a.ordinal for a in Algorithm},
        },
        "runs": [
            {
                "instance": row["instance"],
                "algorithm": row["algorithm"],
                "replication": row["replication"],
                "seed": row["seed"],
                "status": row["status"] if row["status"] == "ok" else "error",
                "front_file": row["front_file"],
            }
            for row in rows
        ],
        "reference_fronts": {
            name: {
                "file": reference_files[name],
                "fed_by_rows": fronts_by_instance[name],
            }
            for name in names
            if name in reference_files
        },
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )

    failures = sum(1 for row in rows if row["status"] != "ok")
    return ExperimentResult(
        output_dir=out, rows=rows, failures=failures, reference_files=reference_files
    )


SWEEP_CSV_COLUMNS = (
    "missing_prob",
    "points",
    "makespan_min",
    "makespan_median",
    "makespan_max",
    "wtct_min",
    "wtct_median",
    "wtct_max",
    "tardiness_min",
    "tardiness_median",
    "tardiness_max",
)

_OBJECTIVES = ("makespan", "wtct", "tardiness")


def _front_stats(front: ParetoFront) -> dict:
    rows = front.objective_rows()
    stats = {"points": len(front)}
    for col, objective in enumerate(_OBJECTIVES):
        values = [int(v) for v in rows[:, col]]
        stats[f"{objective}_min"] = min(values)
        stats[f"{objective}_median"] = float(statistics.median(values))
        stats[f"{objective}_max"] = max(values)
    return stats


def _relative_change(first: float, last: float):
    if first == 0:
        return None
    return (last - first) / first


def missing_ops_sweep(
    base: GeneratorConfig,
    probs,
    algorithms,
    output_dir,
    replications: int = 10,
    base_seed: int = 0,
    workers: int = 1,
) -> dict:
    """Rerun the full plan across missing-operation levels and report trends.

    All levels share the generator seed, so a larger probability only erases
    additional entries of the same drawn matrix; the per-level consolidated
    front (union over every algorithm and replication) feeds the summary.
    """
    probs = [float(p) for p in probs]
    if not probs:
        raise ValueError("sweep needs at least one probability")
    if any(b <= a for a, b in zip(probs, probs[1:])):
        raise ValueError("probabilities must be strictly ascending")
    if probs[0] < 0.0 or probs[-1] >= 1.0:
        raise ValueError("probabilities must lie in [0, 1)")

    specs = tuple(
        InstanceSpec(
            generate=GeneratorConfig(
                n_jobs=base.n_jobs,
                n_machines=base.n_machines,
                missing_prob=p,
                seed=base.seed,
                due_date_tightness=base.due_date_tightness,
                weight_range=base.weight_range,
            )
        )
        for p in probs
    )
    plan = ExperimentPlan(
        instances=specs,
        algorithms=tuple(algorithms),
        output_dir=str(output_dir),
        replications=replications,
        base_seed=base_seed,
    )
    result = run_experiment(plan, workers=workers)

    out = result.output_dir
    levels = []
    for p in probs:
        name = instance_name(base.n_jobs, base.n_machines, p)
        ref_file = result.reference_files.get(name)
        if ref_file is None:
            continue
        front = ParetoFront.from_csv((out / ref_file).read_text(encoding="utf-8"))
        levels.append({"missing_prob": p, "front_file": ref_file, **_front_stats(front)})

    _write_csv(
        out / "sweep_summary.csv",
        SWEEP_CSV_COLUMNS,
        ([_fmt(level["missing_prob"])] + [level[c] for c in SWEEP_CSV_COLUMNS[1:]] for level in levels),
    )

    report: dict = {
        "probs": probs,
        "replications": replications,
        "levels": levels,
        "failures": result.failures,
    }
    if levels:
        medians = {
            obj: [level[f"{obj}_median"] for level in levels] for obj in _OBJECTIVES
        }
        report["medians"] = medians
        report["relative_change"] = {
            obj: _relative_change(series[0], series[-1])
            for obj, series in medians.items()
        }
        report["non_increasing"] = {
            obj: all(b <= a for a, b in zip(series, series[1:]))
            for obj, series in medians.items()
        }
        overlaps = []
        for a, b in zip(levels, levels[1:]):
            lo = max(a["makespan_min"], b["makespan_min"])
            hi = min(a["makespan_max"], b["makespan_max"])
            overlaps.append(
                {
                    "pair": [a["missing_prob"], b["missing_prob"]],
                    "overlap": [lo, hi] if lo <= hi else None,
                }
            )
        report["makespan_range_overlap"] = overlaps
        rel = report["relative_change"]
        if rel["makespan"] is not None and rel["tardiness"] is not None:
            report["makespan_less_affected"] = abs(rel["makespan"]) < abs(
                rel["tardiness"]
            )
    (out / "sweep_report.json").write_text(
        json.dumps(report, indent=2) + "\n", encoding="utf-8"
    )
    return report
