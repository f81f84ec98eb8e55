"""Command-line interface.

Commands:
    generate      config file -> instance JSON
    solve         instance + algorithm -> schedule JSON + summary
    validate      instance + schedule -> feasibility report
    sweep         sweep spec -> CSV
    usage-report  fixed-point usage comparison -> CSV

Exit codes: 0 success, 1 invalid input, 2 infeasible schedule (validate).
All file outputs are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import experiments, model, workload
from .exact import SolveMode, solve_exact
from .heuristics import dra, sra
from .model import validate as validate_schedule
from .model import welfare

NODE_BUDGET_ENV = "SLICE_CAL_NODE_BUDGET"


class InputError(Exception):
    """Invalid user input; message names the offending field or file."""


def _atomic_write(path: str, content: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as f:
            f.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_json(path: str) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno} column {e.colno}")


def _cmd_generate(args) -> int:
    data = _load_json(args.config)
    try:
        cfg = workload.config_from_dict(data)
    except (workload.ConfigInvalid, TypeError, KeyError, ValueError) as e:
        raise InputError(f"{args.config}: {e}")
    if args.seed is not None:
        cfg = cfg.replace(seed=args.seed)
    instance = workload.generate(cfg)
    _atomic_write(args.out, model.dumps(model.instance_to_dict(instance)))
    print(f"wrote {args.out}: {len(instance.requests)} requests, "
          f"horizon {instance.horizon}, capacity {instance.capacity}")
    return 0


def _load_instance(path: str) -> model.Instance:
    data = _load_json(path)
    try:
        return model.instance_from_dict(data)
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"{path}: {e}")


def _cmd_solve(args) -> int:
    instance = _load_instance(args.instance)
    if args.algo == "dra":
        schedule = dra(instance)
        caps = True
    elif args.algo == "sra":
        schedule = sra(instance)
        caps = False
    else:
        if args.mode is None:
            raise InputError("--mode is required with --algo exact")
        mode = SolveMode(args.mode)
        budget = None
        if os.environ.get(NODE_BUDGET_ENV):
            try:
                budget = int(os.environ[NODE_BUDGET_ENV])
            except ValueError:
                raise InputError(f"{NODE_BUDGET_ENV}: not an integer")
        result = solve_exact(instance, mode, node_budget=budget)
        schedule = result.schedule
        caps = mode is SolveMode.DEDICATED
        if not result.proven_optimal:
            print("warning: node budget exhausted, result may be sub-optimal",
                  file=sys.stderr)
    if args.out:
        _atomic_write(args.out, model.dumps(model.schedule_to_dict(schedule)))
    accepted = len(schedule.accepted())
    total = len(instance.requests)
    print(f"algo={args.algo} accepted={accepted}/{total} "
          f"welfare={welfare(instance, schedule)} tenant_caps={'on' if caps else 'off'}")
    return 0


def _cmd_validate(args) -> int:
    instance = _load_instance(args.instance)
    data = _load_json(args.schedule)
    try:
        schedule = model.schedule_from_dict(data)
        report = validate_schedule(instance, schedule, args.tenant_caps)
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"{args.schedule}: {e}")
    if report.feasible:
        print("feasible")
        return 0
    for v in report.violations:
        print(f"{v.tag} slot={v.slot} request={v.request}: {v.detail}")
    print(f"infeasible: {len(report.violations)} violation(s)")
    return 2


def _cmd_sweep(args) -> int:
    data = _load_json(args.spec)
    try:
        spec = experiments.spec_from_dict(data)
    except (KeyError, ValueError, TypeError, workload.ConfigInvalid) as e:
        raise InputError(f"{args.spec}: {e}")
    overrides = {}
    if args.seed is not None:
        overrides["base"] = spec.base.replace(seed=args.seed)
    if args.seeds_per_point is not None:
        overrides["seeds_per_point"] = args.seeds_per_point
    if overrides:
        from dataclasses import replace

        spec = replace(spec, **overrides)
    try:
        result = experiments.run_sweep(spec)
    except experiments.ExactTooLarge as e:
        raise InputError(str(e))
    _atomic_write(args.out, experiments.sweep_to_csv(result))
    print(f"wrote {args.out}: {len(result.rows)} rows")
    return 0


def _cmd_usage_report(args) -> int:
    base = workload.GenConfig()
    if args.seed is not None:
        base = base.replace(seed=args.seed)
    report = experiments.tenant_usage_report(
        args.requests, args.capacity, args.seeds, base
    )
    _atomic_write(args.out, experiments.usage_report_to_csv(report))
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicecal",
        description="Slice-aware radio-resource calendaring toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a random instance")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--algo", required=True, choices=["dra", "sra", "exact"])
    p.add_argument("--mode", choices=["shared", "dedicated"])
    p.add_argument("--out")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("validate", help="validate a schedule")
    p.add_argument("--instance", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--tenant-caps", action="store_true",
                   help="also enforce per-tenant reservation caps")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("sweep", help="run a seeded sweep, emit CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--seeds-per-point", type=int)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("usage-report",
                       help="per-tenant usage comparison of DRA vs SRA")
    p.add_argument("--requests", type=int, required=True)
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_usage_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
