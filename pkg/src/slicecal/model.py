"""Domain types for slice-aware radio-resource calendaring.

Time slots are 1-based (1..horizon). A request that starts at slot n
occupies slots n..n+duration-1. Resource units within a slot are
identical and interchangeable; the schedule nevertheless records
explicit (slot, unit) cells so exclusivity can be checked literally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class SliceType(Enum):
    EMBB = "EMBB"
    EMBBRLLC = "EMBBRLLC"


@dataclass(frozen=True)
class Tenant:
    """A customer holding a contractual reservation of resource units."""

    id: int
    reserved: int
    share: float = 0.0

    def __post_init__(self):
        if self.reserved < 0:
            raise ValueError(f"tenant {self.id}: reserved must be >= 0")


@dataclass(frozen=True)
class Request:
    """One user demand: fixed per-slot demand over a contiguous window."""

    id: int
    tenant: int
    slice: SliceType
    arrival: int
    demand: int
    duration: int

    def __post_init__(self):
        if self.arrival < 1:
            raise ValueError(f"request {self.id}: arrival must be >= 1")
        if self.demand < 1:
            raise ValueError(f"request {self.id}: demand must be >= 1")
        if self.duration < 1:
            raise ValueError(f"request {self.id}: duration must be >= 1")


@dataclass(frozen=True)
class Instance:
    """The full offline problem: horizon, per-slot capacity, tenants, requests."""

    horizon: int
    capacity: int
    tenants: tuple[Tenant, ...]
    requests: tuple[Request, ...]

    def __post_init__(self):
        object.__setattr__(self, "tenants", tuple(self.tenants))
        object.__setattr__(self, "requests", tuple(self.requests))
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.capacity < 0:
            raise ValueError("capacity must be >= 0")
        if sum(t.reserved for t in self.tenants) > self.capacity:
            raise ValueError("sum of tenant reservations exceeds capacity")
        ids = [t.id for t in self.tenants]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate tenant ids")
        rids = [r.id for r in self.requests]
        if len(set(rids)) != len(rids):
            raise ValueError("duplicate request ids")
        known = set(ids)
        for r in self.requests:
            if r.tenant not in known:
                raise ValueError(f"request {r.id}: unknown tenant {r.tenant}")
            if r.arrival > self.horizon:
                raise ValueError(f"request {r.id}: arrival beyond horizon")

    def tenant_by_id(self, tid: int) -> Tenant:
        for t in self.tenants:
            if t.id == tid:
                return t
        raise KeyError(tid)

    def request_by_id(self, rid: int) -> Request:
        for r in self.requests:
            if r.id == rid:
                return r
        raise KeyError(rid)


@dataclass(frozen=True)
class Schedule:
    """A decision: per-request start slot (None = rejected) plus explicit
    (slot, unit, request) assignment cells."""

    starts: dict[int, Optional[int]]
    assignment: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))

    def accepted(self) -> dict[int, int]:
        """Request id -> start slot, accepted requests only."""
        return {k: n for k, n in self.starts.items() if n is not None}


EMPTY_SCHEDULE = Schedule(starts={})


@dataclass(frozen=True)
class Violation:
    tag: str  # ADMISSION | EXCLUSIVITY | DEMAND | CAPACITY | TENANT_CAP
    slot: Optional[int]
    request: Optional[int]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    feasible: bool
    violations: tuple[Violation, ...]


def latest_start(request: Request, horizon: int) -> int:
    """Last slot from which the request can start and still complete.

    Returns 0 ("never") when duration exceeds the horizon. For an
    immediate-service request the only admissible start is its arrival.
    """
    if request.duration > horizon:
        return 0
    if request.slice is SliceType.EMBBRLLC:
        if request.arrival + request.duration - 1 > horizon:
            return 0
        return request.arrival
    return horizon - request.duration + 1


def utility(request: Request, n: int, horizon: int) -> int:
    """0/1 utility of starting the request at slot n.

    Delay-tolerant requests yield 1 anywhere in [arrival, latest_start];
    immediate-service requests yield 1 only at their arrival slot.
    """
    return 1 if request.arrival <= n <= latest_start(request, horizon) else 0


def validate(
    instance: Instance, schedule: Schedule, tenant_caps_enforced: bool = False
) -> ValidationReport:
    """Check a schedule against every constraint; report all problems.

    Checks, in order: admission windows, per-cell exclusivity, exact
    per-slot demand for accepted requests, per-slot capacity, and
    (optionally) the per-slot per-tenant reservation cap.
    """
    violations: list[Violation] = []
    reqs = {r.id: r for r in instance.requests}

    for rid in schedule.starts:
        if rid not in reqs:
            raise KeyError(f"schedule references unknown request {rid}")

    accepted = schedule.accepted()
    for rid, start in accepted.items():
        r = reqs[rid]
        ls = latest_start(r, instance.horizon)
        if not (r.arrival <= start <= ls):
            violations.append(
                Violation(
                    "ADMISSION",
                    start,
                    rid,
                    f"start {start} outside admission window "
                    f"[{r.arrival}, {ls}]",
                )
            )

    # Exclusivity: each (slot, unit) cell holds at most one request.
    seen_cells: dict[tuple[int, int], int] = {}
    for slot, unit, rid in schedule.assignment:
        if rid not in reqs:
            raise KeyError(f"assignment references unknown request {rid}")
        cell = (slot, unit)
        if cell in seen_cells:
            violations.append(
                Violation(
                    "EXCLUSIVITY",
                    slot,
                    rid,
                    f"unit {unit} already assigned to request {seen_cells[cell]}",
                )
            )
        else:
            seen_cells[cell] = rid

    # Units received per (request, slot), counting duplicate cells once.
    per_req_slot: dict[int, dict[int, int]] = {rid: {} for rid in reqs}
    for (slot, unit), rid in seen_cells.items():
        per_req_slot[rid][slot] = per_req_slot[rid].get(slot, 0) + 1

    for rid, r in reqs.items():
        start = accepted.get(rid)
        active = (
            set(range(start, start + r.duration)) if start is not None else set()
        )
        for slot in active:
            got = per_req_slot[rid].get(slot, 0)
            if got != r.demand:
                violations.append(
                    Violation(
                        "DEMAND",
                        slot,
                        rid,
                        f"got {got} units, demand is {r.demand}",
                    )
                )
        for slot, got in per_req_slot[rid].items():
            if slot not in active and got > 0:
                violations.append(
                    Violation(
                        "DEMAND",
                        slot,
                        rid,
                        f"{got} units assigned outside active window",
                    )
                )

    # Capacity: per-slot totals and unit-index range.
    slot_totals: dict[int, int] = {}
    for slot, unit, _rid in set(schedule.assignment):
        slot_totals[slot] = slot_totals.get(slot, 0) + 1
        if not (1 <= unit <= instance.capacity) or not (
            1 <= slot <= instance.horizon
        ):
            violations.append(
                Violation(
                    "CAPACITY",
                    slot,
                    _rid,
                    f"cell (slot {slot}, unit {unit}) outside the grid",
                )
            )
    for slot, total in sorted(slot_totals.items()):
        if total > instance.capacity:
            violations.append(
                Violation(
                    "CAPACITY",
                    slot,
                    None,
                    f"{total} units assigned, capacity is {instance.capacity}",
                )
            )

    if tenant_caps_enforced:
        usage: dict[tuple[int, int], int] = {}
        for (slot, _unit), rid in seen_cells.items():
            key = (slot, reqs[rid].tenant)
            usage[key] = usage.get(key, 0) + 1
        for (slot, tid), used in sorted(usage.items()):
            reserved = instance.tenant_by_id(tid).reserved
            if used > reserved:
                violations.append(
                    Violation(
                        "TENANT_CAP",
                        slot,
                        None,
                        f"tenant {tid} uses {used} units, reserved {reserved}",
                    )
                )

    return ValidationReport(
        feasible=not violations, violations=tuple(violations)
    )


def welfare(instance: Instance, schedule: Schedule) -> int:
    """Sum of start-slot utilities over accepted requests."""
    return sum(
        utility(instance.request_by_id(rid), start, instance.horizon)
        for rid, start in schedule.accepted().items()
    )


def materialize(instance: Instance, starts: dict[int, Optional[int]]) -> Schedule:
    """Expand a start-slot decision into explicit unit cells.

    Units are interchangeable, so lowest-index free units are handed out
    per slot, in request-id order. Requires count feasibility per slot.
    """
    assignment: list[tuple[int, int, int]] = []
    next_free = {n: 1 for n in range(1, instance.horizon + 1)}
    for rid in sorted(k for k, n in starts.items() if n is not None):
        r = instance.request_by_id(rid)
        start = starts[rid]
        for slot in range(start, start + r.duration):
            for _ in range(r.demand):
                unit = next_free[slot]
                if unit > instance.capacity:
                    raise ValueError(f"slot {slot} over capacity")
                assignment.append((slot, unit, rid))
                next_free[slot] = unit + 1
    return Schedule(starts=dict(starts), assignment=tuple(assignment))


# --- JSON round-trip ---------------------------------------------------------


def instance_to_dict(instance: Instance) -> dict:
    return {
        "horizon": instance.horizon,
        "capacity": instance.capacity,
        "tenants": [
            {"id": t.id, "reserved": t.reserved, "share": t.share}
            for t in instance.tenants
        ],
        "requests": [
            {
                "id": r.id,
                "tenant": r.tenant,
                "slice": r.slice.value,
                "arrival": r.arrival,
                "demand": r.demand,
                "duration": r.duration,
            }
            for r in instance.requests
        ],
    }


def instance_from_dict(data: dict) -> Instance:
    return Instance(
        horizon=data["horizon"],
        capacity=data["capacity"],
        tenants=tuple(
            Tenant(id=t["id"], reserved=t["reserved"], share=t.get("share", 0.0))
            for t in data["tenants"]
        ),
        requests=tuple(
            Request(
                id=r["id"],
                tenant=r["tenant"],
                slice=SliceType(r["slice"]),
                arrival=r["arrival"],
                demand=r["demand"],
                duration=r["duration"],
            )
            for r in data["requests"]
        ),
    )


def schedule_to_dict(schedule: Schedule) -> dict:
    return {
        "starts": {str(k): n for k, n in sorted(schedule.starts.items())},
        "assignment": [
            {"slot": slot, "unit": unit, "request": rid}
            for slot, unit, rid in schedule.assignment
        ],
    }


def schedule_from_dict(data: dict) -> Schedule:
    return Schedule(
        starts={int(k): n for k, n in data["starts"].items()},
        assignment=tuple(
            (c["slot"], c["unit"], c["request"]) for c in data["assignment"]
        ),
    )


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"
