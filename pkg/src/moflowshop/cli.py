"""Command-line front end: gen / run / sweep / metrics."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algorithms import Algorithm, preset
from .experiment import load_plan, missing_ops_sweep, run_experiment
from .instances import GeneratorConfig, InstanceFormatError, generate_instance, save_instance
from .metrics import ParetoFront, ReferenceFront, relative_hypervolume, spread

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2


class _Parser(argparse.ArgumentParser):
    # bad flags are a configuration problem: exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moflowshop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--jobs", type=int, required=True)
    gen.add_argument("--machines", type=int, required=True)
    gen.add_argument("--missing", type=float, required=True,
                     help="missing-operation probability in [0, 1)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    run = sub.add_parser("run", help="execute an experiment plan")
    run.add_argument("--plan", required=True, help="plan JSON file")
    run.add_argument("--workers", type=int, default=1)

    sweep = sub.add_parser("sweep", help="missing-operations sweep on one base instance")
    sweep.add_argument("--jobs", type=int, required=True)
    sweep.add_argument("--machines", type=int, required=True)
    sweep.add_argument("--probs", required=True,
                       help="comma-separated ascending probabilities, e.g. 0,0.1,0.2")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--replications", type=int, default=10)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--budget", type=int, default=150_000,
                       help="objective evaluations per run")
    sweep.add_argument("--algorithms", default="nsga2,nsga3,spea2,moead")

    metrics = sub.add_parser("metrics", help="score a front CSV against a reference CSV")
    metrics.add_argument("--front", required=True)
    metrics.add_argument("--ref", required=True)

    return parser


def _cmd_gen(args) -> int:
    cfg = GeneratorConfig(
        n_jobs=args.jobs,
        n_machines=args.machines,
        missing_prob=args.missing,
        seed=args.seed,
    )
    inst = generate_instance(cfg)
    save_instance(inst, args.out)
    print(f"wrote {inst.name} to {args.out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    plan = load_plan(args.plan)
    result = run_experiment(plan, workers=args.workers)
    print(f"{len(result.rows)} runs, {result.failures} failed -> {result.output_dir}")
    return EXIT_PARTIAL if result.failures else EXIT_OK


def _cmd_sweep(args) -> int:
    probs = [float(tok) for tok in args.probs.split(",") if tok.strip()]
    algorithms = [
        preset(Algorithm.parse(tok.strip()), max_evaluations=args.budget)
        for tok in args.algorithms.split(",")
        if tok.strip()
    ]
    base = GeneratorConfig(
        n_jobs=args.jobs,
        n_machines=args.machines,
        missing_prob=probs[0] if probs else 0.0,
        seed=args.seed,
    )
    report = missing_ops_sweep(
        base,
        probs,
        algorithms,
        output_dir=args.out,
        replications=args.replications,
        base_seed=args.seed,
        workers=args.workers,
    )
    print(json.dumps({k: report[k] for k in ("probs", "failures") if k in report}))
    if "non_increasing" in report:
        print(json.dumps({"non_increasing": report["non_increasing"]}))
    return EXIT_PARTIAL if report.get("failures") else EXIT_OK


def _cmd_metrics(args) -> int:
    front = ParetoFront.from_csv(Path(args.front).read_text(encoding="utf-8"))
    ref_front = ParetoFront.from_csv(Path(args.ref).read_text(encoding="utf-8"))
    ref = ReferenceFront.of(ref_front)
    print(f"points={len(front)}")
    print(f"rhv={relative_hypervolume(front, ref):.6f}")
    print(f"spread={spread(front, ref):.6f}")
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "metrics": _cmd_metrics,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, InstanceFormatError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
