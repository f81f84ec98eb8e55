"""Greedy schedulers: dedicated-pool allocation (DRA) and
sharing-based allocation with tenant-to-tenant borrowing (SRA).

Both sweep the slots in order, repeatedly walking a priority list of
pending requests. Priority is earlier deadline first, then larger
demand, then request id for determinism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Instance, Request, Schedule, latest_start, materialize


@dataclass
class LedgerView:
    """Per-slot usage bookkeeping. Arrays are indexed 1..horizon (index 0
    unused). tenant_borrowed_out tracks reservation units lent to other
    tenants; only SRA writes it."""

    free_units: list[int]
    tenant_used: dict[int, list[int]]
    tenant_borrowed_out: dict[int, list[int]] = field(default_factory=dict)

    @classmethod
    def fresh(cls, instance: Instance) -> "LedgerView":
        n = instance.horizon + 1
        return cls(
            free_units=[instance.capacity] * n,
            tenant_used={t.id: [0] * n for t in instance.tenants},
            tenant_borrowed_out={t.id: [0] * n for t in instance.tenants},
        )


def priority_key(request: Request, horizon: int) -> tuple[int, int, int]:
    return (latest_start(request, horizon), -request.demand, request.id)


def priority_list(instance: Instance, slot: int, pending: set[int]) -> list[int]:
    """Pending requests eligible to start at `slot`, highest priority first."""
    eligible = [
        r
        for r in instance.requests
        if r.id in pending
        and r.arrival <= slot <= latest_start(r, instance.horizon)
    ]
    eligible.sort(key=lambda r: priority_key(r, instance.horizon))
    return [r.id for r in eligible]


def _dedicated_sweep(
    instance: Instance, tenant_id: int, ledger: LedgerView,
    starts: dict[int, int | None],
) -> None:
    """Slot sweep admitting one tenant's requests from its own pool only."""
    tenant = instance.tenant_by_id(tenant_id)
    used = ledger.tenant_used[tenant_id]
    pending = {
        r.id
        for r in instance.requests
        if r.tenant == tenant_id and r.demand <= tenant.reserved
    }
    for slot in range(1, instance.horizon + 1):
        for rid in priority_list(instance, slot, pending):
            r = instance.request_by_id(rid)
            window = range(slot, slot + r.duration)
            if all(
                tenant.reserved - used[n] >= r.demand
                and ledger.free_units[n] >= r.demand
                for n in window
            ):
                starts[rid] = slot
                pending.discard(rid)
                for n in window:
                    used[n] += r.demand
                    ledger.free_units[n] -= r.demand
        pending = {
            rid
            for rid in pending
            if latest_start(instance.request_by_id(rid), instance.horizon) > slot
        }


def dra(instance: Instance) -> Schedule:
    """Dedicated allocation: each tenant schedules only within its own
    reservation. Tenants are processed in id order; pools are disjoint so
    the order cannot change the acceptance set."""
    ledger = LedgerView.fresh(instance)
    starts: dict[int, int | None] = {r.id: None for r in instance.requests}
    for tenant in sorted(instance.tenants, key=lambda t: t.id):
        _dedicated_sweep(instance, tenant.id, ledger, starts)
    return materialize(instance, starts)


def _pool_slack(ledger: LedgerView, instance: Instance, tid: int, slot: int) -> int:
    reserved = instance.tenant_by_id(tid).reserved
    return (
        reserved
        - ledger.tenant_used[tid][slot]
        - ledger.tenant_borrowed_out[tid][slot]
    )


def sra(instance: Instance) -> Schedule:
    """Sharing-based allocation: tenants lend reservation capacity they do
    not need to each other.

    Reservation-backed admissions are settled first, per tenant, exactly
    as in the dedicated sweep; the remaining requests then compete in a
    global priority sweep for the leftover capacity. A leftover admission
    draws the borrower's own unused pool to exhaustion first, then one
    donor tenant's slack over the whole service window. Sharing therefore
    only ever adds admissions on top of the dedicated outcome; it never
    displaces one."""
    ledger = LedgerView.fresh(instance)
    starts: dict[int, int | None] = {r.id: None for r in instance.requests}
    for tenant in sorted(instance.tenants, key=lambda t: t.id):
        _dedicated_sweep(instance, tenant.id, ledger, starts)

    pending = {
        r.id
        for r in instance.requests
        if starts[r.id] is None and r.demand <= instance.capacity
    }
    for slot in range(1, instance.horizon + 1):
        for rid in priority_list(instance, slot, pending):
            r = instance.request_by_id(rid)
            window = list(range(slot, slot + r.duration))
            if any(ledger.free_units[n] < r.demand for n in window):
                continue
            own = {n: _pool_slack(ledger, instance, r.tenant, n) for n in window}

            donor = None
            if any(own[n] < r.demand for n in window):
                # Find one donor whose slack closes the gap in every
                # window slot; prefer the largest worst-case slack.
                candidates = []
                for t in instance.tenants:
                    if t.id == r.tenant:
                        continue
                    slack = {
                        n: _pool_slack(ledger, instance, t.id, n) for n in window
                    }
                    if all(own[n] + slack[n] >= r.demand for n in window):
                        candidates.append((-min(slack.values()), t.id))
                if not candidates:
                    continue
                donor = min(candidates)[1]

            starts[rid] = slot
            pending.discard(rid)
            for n in window:
                own_charge = min(own[n], r.demand)
                ledger.tenant_used[r.tenant][n] += own_charge
                if donor is not None and r.demand > own_charge:
                    ledger.tenant_borrowed_out[donor][n] += r.demand - own_charge
                ledger.free_units[n] -= r.demand
        pending = {
            rid
            for rid in pending
            if latest_start(instance.request_by_id(rid), instance.horizon) > slot
        }

    return materialize(instance, starts)
