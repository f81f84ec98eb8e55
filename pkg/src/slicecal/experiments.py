"""Seeded sweep harness: acceptance-rate curves over request count or
capacity, and per-tenant resource-usage comparison, emitted as CSV.

All sweeps are deterministic functions of the base seed; CSV output is
byte-stable (fixed 4-decimal float formatting, fixed row order).
"""

from __future__ import annotations

import io
import statistics
from dataclasses import dataclass

from .exact import SolveMode, solve_exact
from .heuristics import dra, sra
from .model import Instance, Schedule, welfare
from .workload import GenConfig, generate

ALGORITHMS = ("dra", "sra", "exact_shared", "exact_dedicated")


class ExactTooLarge(Exception):
    """The exact solver was requested on instances beyond its node budget."""


@dataclass(frozen=True)
class SweepSpec:
    varied: str  # "requests" | "capacity"
    points: tuple[int, ...]
    base: GenConfig
    seeds_per_point: int = 100
    algorithms: tuple[str, ...] = ("dra", "sra")

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.varied not in ("requests", "capacity"):
            raise ValueError("varied must be 'requests' or 'capacity'")
        if not self.points or list(self.points) != sorted(set(self.points)):
            raise ValueError("points must be non-empty and strictly increasing")
        if self.seeds_per_point < 1:
            raise ValueError("seeds_per_point must be >= 1")
        algos: list[str] = []
        for a in self.algorithms:
            name = a.lower()
            if name == "exact":
                algos.extend(["exact_shared", "exact_dedicated"])
            elif name in ALGORITHMS:
                algos.append(name)
            else:
                raise ValueError(f"unknown algorithm {a!r}; valid: dra, sra, exact")
        object.__setattr__(self, "algorithms", tuple(dict.fromkeys(algos)))


@dataclass(frozen=True)
class SweepRow:
    point: int
    algorithm: str
    seeds: int
    mean_acceptance_pct: float
    std_acceptance_pct: float
    mean_welfare: float
    tenant_usage: tuple[float, ...]  # mean units per slot, per tenant


@dataclass(frozen=True)
class SweepResult:
    varied: str
    rows: tuple[SweepRow, ...]

    def row(self, point: int, algorithm: str) -> SweepRow:
        for r in self.rows:
            if r.point == point and r.algorithm == algorithm:
                return r
        raise KeyError((point, algorithm))


def _run_algorithm(name: str, instance: Instance) -> Schedule:
    if name == "dra":
        return dra(instance)
    if name == "sra":
        return sra(instance)
    mode = SolveMode.SHARED if name == "exact_shared" else SolveMode.DEDICATED
    result = solve_exact(instance, mode)
    if not result.proven_optimal:
        raise ExactTooLarge(
            "exact solver exhausted its node budget; shrink the instance"
        )
    return result.schedule


def tenant_usage_per_slot(instance: Instance, schedule: Schedule) -> list[float]:
    """Mean units consumed per slot for each tenant, averaged over the
    horizon (tenants in id order)."""
    totals = {t.id: 0 for t in instance.tenants}
    for rid, start in schedule.accepted().items():
        r = instance.request_by_id(rid)
        totals[r.tenant] += r.demand * r.duration
    return [
        totals[t.id] / instance.horizon
        for t in sorted(instance.tenants, key=lambda t: t.id)
    ]


def instance_seed(base_seed: int, point_index: int, seed_index: int) -> int:
    return base_seed + 1_000_003 * point_index + seed_index


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Run every (point, seed, algorithm) combination and aggregate.

    Acceptance percentage is 100 * accepted / K, defined as 100 when
    K = 0 (vacuous acceptance)."""
    rows: list[SweepRow] = []
    for pi, point in enumerate(spec.points):
        per_algo: dict[str, list[tuple[float, int, list[float]]]] = {
            a: [] for a in spec.algorithms
        }
        for si in range(spec.seeds_per_point):
            cfg = spec.base.replace(
                seed=instance_seed(spec.base.seed, pi, si),
                **(
                    {"num_requests": point}
                    if spec.varied == "requests"
                    else {"capacity": point}
                ),
            )
            instance = generate(cfg)
            k = len(instance.requests)
            for algo in spec.algorithms:
                schedule = _run_algorithm(algo, instance)
                accepted = len(schedule.accepted())
                pct = 100.0 if k == 0 else 100.0 * accepted / k
                per_algo[algo].append(
                    (pct, welfare(instance, schedule), tenant_usage_per_slot(instance, schedule))
                )
        for algo in spec.algorithms:
            pcts = [x[0] for x in per_algo[algo]]
            welfares = [x[1] for x in per_algo[algo]]
            usages = [x[2] for x in per_algo[algo]]
            n_tenants = len(usages[0])
            rows.append(
                SweepRow(
                    point=point,
                    algorithm=algo,
                    seeds=spec.seeds_per_point,
                    mean_acceptance_pct=statistics.fmean(pcts),
                    std_acceptance_pct=statistics.pstdev(pcts),
                    mean_welfare=statistics.fmean(welfares),
                    tenant_usage=tuple(
                        statistics.fmean(u[t] for u in usages)
                        for t in range(n_tenants)
                    ),
                )
            )
    return SweepResult(varied=spec.varied, rows=tuple(rows))


def sweep_to_csv(result: SweepResult) -> str:
    n_tenants = len(result.rows[0].tenant_usage) if result.rows else 0
    buf = io.StringIO()
    usage_cols = ",".join(f"tenant_usage_{t}" for t in range(n_tenants))
    header = (
        "sweep,point,algorithm,seeds,mean_acceptance_pct,"
        "std_acceptance_pct,mean_welfare"
    )
    buf.write(header + ("," + usage_cols if usage_cols else "") + "\n")
    for r in result.rows:
        fields = [
            result.varied,
            str(r.point),
            r.algorithm,
            str(r.seeds),
            f"{r.mean_acceptance_pct:.4f}",
            f"{r.std_acceptance_pct:.4f}",
            f"{r.mean_welfare:.4f}",
        ]
        fields.extend(f"{u:.4f}" for u in r.tenant_usage)
        buf.write(",".join(fields) + "\n")
    return buf.getvalue()


def tenant_usage_report(
    k: int, r: int, seeds: int, base: GenConfig | None = None
) -> dict[str, list[float]]:
    """Mean per-slot units used by each tenant under both heuristics,
    averaged over `seeds` instances at fixed request count k and
    capacity r. Keys "dra" and "sra"; values are per-tenant means."""
    base = base if base is not None else GenConfig()
    cfg0 = base.replace(num_requests=k, capacity=r)
    sums = {"dra": None, "sra": None}
    for si in range(seeds):
        instance = generate(cfg0.replace(seed=instance_seed(base.seed, 0, si)))
        for algo in ("dra", "sra"):
            usage = tenant_usage_per_slot(instance, _run_algorithm(algo, instance))
            if sums[algo] is None:
                sums[algo] = usage
            else:
                sums[algo] = [a + b for a, b in zip(sums[algo], usage)]
    return {
        algo: [s / seeds for s in sums[algo]] if sums[algo] else []
        for algo in ("dra", "sra")
    }


def usage_report_to_csv(report: dict[str, list[float]]) -> str:
    buf = io.StringIO()
    buf.write("algorithm,tenant,mean_usage_per_slot\n")
    for algo in ("dra", "sra"):
        for tid, usage in enumerate(report[algo]):
            buf.write(f"{algo},{tid},{usage:.4f}\n")
    return buf.getvalue()


def spec_to_dict(spec: SweepSpec) -> dict:
    from .workload import config_to_dict

    return {
        "varied": spec.varied,
        "points": list(spec.points),
        "base": config_to_dict(spec.base),
        "seeds_per_point": spec.seeds_per_point,
        "algorithms": list(spec.algorithms),
    }


def spec_from_dict(data: dict) -> SweepSpec:
    from .workload import config_from_dict

    return SweepSpec(
        varied=data["varied"],
        points=tuple(data["points"]),
        base=config_from_dict(data["base"]),
        seeds_per_point=data.get("seeds_per_point", 100),
        algorithms=tuple(data.get("algorithms", ("dra", "sra"))),
    )
