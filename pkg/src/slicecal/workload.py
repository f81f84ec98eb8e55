"""Seeded random instance generator.

Defaults follow the evaluation settings: 10 slots, 20 units per slot,
3 tenants with resource shares 0.2/0.2/0.6, half the requests
delay-tolerant, and per-request arrival/demand/duration each uniform
discrete on [1, 5].

RNG algorithm: Python's Mersenne Twister (`random.Random`), identifier
RNG_ALGORITHM. Identical seeds give field-for-field identical instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Instance, Request, SliceType, Tenant

RNG_ALGORITHM = "python-random-mt19937"


class ConfigInvalid(ValueError):
    """A generator configuration violates its invariants."""


@dataclass(frozen=True)
class GenConfig:
    horizon: int = 10
    capacity: int = 20
    num_requests: int = 50
    tenant_shares: tuple[float, ...] = (0.2, 0.2, 0.6)
    embb_fraction: float = 0.5
    arrival_range: tuple[int, int] = (1, 5)
    demand_range: tuple[int, int] = (1, 5)
    duration_range: tuple[int, int] = (1, 5)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tenant_shares", tuple(self.tenant_shares))
        if self.horizon < 1:
            raise ConfigInvalid("horizon must be >= 1")
        if self.capacity < 0:
            raise ConfigInvalid("capacity must be >= 0")
        if self.num_requests < 0:
            raise ConfigInvalid("num_requests must be >= 0")
        if not self.tenant_shares:
            raise ConfigInvalid("tenant_shares must be non-empty")
        if any(s < 0 for s in self.tenant_shares):
            raise ConfigInvalid("tenant_shares must be >= 0")
        if abs(sum(self.tenant_shares) - 1.0) > 1e-9:
            raise ConfigInvalid("tenant_shares must sum to 1")
        if not (0.0 <= self.embb_fraction <= 1.0):
            raise ConfigInvalid("embb_fraction must be in [0, 1]")
        for name in ("arrival_range", "demand_range", "duration_range"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise ConfigInvalid(f"{name} must be a non-empty range with lo >= 1")
        if self.arrival_range[1] > self.horizon:
            raise ConfigInvalid("arrival_range must lie within the horizon")

    def replace(self, **kwargs) -> "GenConfig":
        from dataclasses import replace

        return replace(self, **kwargs)


def reservations(shares: tuple[float, ...], capacity: int) -> list[int]:
    """Integer reservations: floor(share * capacity) per tenant, remainder
    to the largest-share tenant (first one on ties). Sums to capacity."""
    floors = [int(s * capacity + 1e-9) for s in shares]
    remainder = capacity - sum(floors)
    largest = max(range(len(shares)), key=lambda i: (shares[i], -i))
    floors[largest] += remainder
    return floors


def generate(config: GenConfig) -> Instance:
    """Draw a random instance; deterministic given the seed."""
    rng = random.Random(config.seed)
    reserved = reservations(config.tenant_shares, config.capacity)
    tenants = tuple(
        Tenant(id=i, reserved=reserved[i], share=config.tenant_shares[i])
        for i in range(len(config.tenant_shares))
    )
    requests = []
    for k in range(config.num_requests):
        tenant = rng.randrange(len(tenants))
        slice_type = (
            SliceType.EMBB
            if rng.random() < config.embb_fraction
            else SliceType.EMBBRLLC
        )
        requests.append(
            Request(
                id=k,
                tenant=tenant,
                slice=slice_type,
                arrival=rng.randint(*config.arrival_range),
                demand=rng.randint(*config.demand_range),
                duration=rng.randint(*config.duration_range),
            )
        )
    return Instance(
        horizon=config.horizon,
        capacity=config.capacity,
        tenants=tenants,
        requests=tuple(requests),
    )


def config_to_dict(config: GenConfig) -> dict:
    return {
        "horizon": config.horizon,
        "capacity": config.capacity,
        "num_requests": config.num_requests,
        "tenant_shares": list(config.tenant_shares),
        "embb_fraction": config.embb_fraction,
        "arrival_range": list(config.arrival_range),
        "demand_range": list(config.demand_range),
        "duration_range": list(config.duration_range),
        "seed": config.seed,
    }


def config_from_dict(data: dict) -> GenConfig:
    kwargs = dict(data)
    for name in ("arrival_range", "demand_range", "duration_range"):
        if name in kwargs:
            kwargs[name] = tuple(kwargs[name])
    if "tenant_shares" in kwargs:
        kwargs["tenant_shares"] = tuple(kwargs["tenant_shares"])
    return GenConfig(**kwargs)
