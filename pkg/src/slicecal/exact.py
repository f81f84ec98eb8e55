"""Exact maximum-welfare scheduling by branch-and-bound, plus an
independent exhaustive-enumeration oracle for testing.

Units within a slot are interchangeable, so per-unit exclusivity and
demand constraints collapse to per-slot count feasibility; unit indices
are materialized only in the final schedule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .model import Instance, Schedule, latest_start, materialize

DEFAULT_NODE_BUDGET = 10_000_000


class SolveMode(Enum):
    SHARED = "shared"  # per-slot capacity only
    DEDICATED = "dedicated"  # additionally per-slot per-tenant usage <= reserved


@dataclass(frozen=True)
class ExactResult:
    schedule: Schedule
    optimum: int
    nodes_explored: int
    proven_optimal: bool


class SpaceTooLarge(Exception):
    """The enumeration space exceeds the oracle's hard bound."""


def _feasible_starts(instance: Instance, rid: int) -> list[int]:
    r = instance.request_by_id(rid)
    ls = latest_start(r, instance.horizon)
    if ls < r.arrival or r.demand > instance.capacity:
        return []
    return list(range(r.arrival, ls + 1))


def solve_exact(
    instance: Instance,
    mode: SolveMode,
    node_budget: Optional[int] = None,
) -> ExactResult:
    """Depth-first branch-and-bound over start-slot assignments.

    Requests are ordered by (latest_start asc, demand desc, id asc);
    branches are each feasible start (ascending) then reject. The bound
    is accepted-so-far plus the count of undecided requests. The first
    incumbent at the optimum value is kept, so results are deterministic.
    """
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    order = sorted(
        instance.requests,
        key=lambda r: (latest_start(r, instance.horizon), -r.demand, r.id),
    )
    starts_options = [_feasible_starts(instance, r.id) for r in order]

    free = [instance.capacity] * (instance.horizon + 1)  # index 0 unused
    tenant_free: dict[int, list[int]] = {}
    if mode is SolveMode.DEDICATED:
        tenant_free = {
            t.id: [t.reserved] * (instance.horizon + 1) for t in instance.tenants
        }

    best_value = -1
    best_starts: dict[int, Optional[int]] = {}
    current: dict[int, Optional[int]] = {}
    nodes = 0
    exhausted = False

    def recurse(idx: int, accepted: int) -> None:
        nonlocal best_value, best_starts, nodes, exhausted
        if exhausted:
            return
        if idx == len(order):
            if accepted > best_value:
                best_value = accepted
                best_starts = dict(current)
            return
        if accepted + (len(order) - idx) <= best_value:
            return
        r = order[idx]
        for start in starts_options[idx]:
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            window = range(start, start + r.duration)
            ok = all(free[n] >= r.demand for n in window)
            if ok and mode is SolveMode.DEDICATED:
                tf = tenant_free[r.tenant]
                ok = all(tf[n] >= r.demand for n in window)
            if not ok:
                continue
            for n in window:
                free[n] -= r.demand
            if mode is SolveMode.DEDICATED:
                for n in window:
                    tenant_free[r.tenant][n] -= r.demand
            current[r.id] = start
            recurse(idx + 1, accepted + 1)
            del current[r.id]
            for n in window:
                free[n] += r.demand
            if mode is SolveMode.DEDICATED:
                for n in window:
                    tenant_free[r.tenant][n] += r.demand
            if exhausted:
                return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        current[r.id] = None
        recurse(idx + 1, accepted)
        del current[r.id]

    recurse(0, 0)

    starts = {r.id: best_starts.get(r.id) for r in instance.requests}
    schedule = materialize(instance, starts)
    return ExactResult(
        schedule=schedule,
        optimum=max(best_value, 0),
        nodes_explored=nodes,
        proven_optimal=not exhausted,
    )


def enumerate_all(instance: Instance, mode: SolveMode) -> int:
    """Test-only oracle: try every start-or-reject combination.

    Shares no search machinery with solve_exact. Raises SpaceTooLarge
    when the cartesian product exceeds 10^7 combinations.
    """
    options: list[list[Optional[int]]] = []
    space = 1
    for r in instance.requests:
        opts: list[Optional[int]] = [None]
        opts.extend(_feasible_starts(instance, r.id))
        options.append(opts)
        space *= len(opts)
        if space > 10_000_000:
            raise SpaceTooLarge(f"{space} combinations exceed the 1e7 bound")

    reqs = list(instance.requests)
    reservations = {t.id: t.reserved for t in instance.tenants}
    best = 0
    for combo in itertools.product(*options):
        load = [0] * (instance.horizon + 1)
        tenant_load: dict[tuple[int, int], int] = {}
        accepted = 0
        feasible = True
        for r, start in zip(reqs, combo):
            if start is None:
                continue
            accepted += 1
            for n in range(start, start + r.duration):
                load[n] += r.demand
                if load[n] > instance.capacity:
                    feasible = False
                    break
                if mode is SolveMode.DEDICATED:
                    key = (n, r.tenant)
                    tenant_load[key] = tenant_load.get(key, 0) + r.demand
                    if tenant_load[key] > reservations[r.tenant]:
                        feasible = False
                        break
            if not feasible:
                break
        if feasible and accepted > best:
            best = accepted
    return best
