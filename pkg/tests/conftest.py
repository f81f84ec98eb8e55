import random

import pytest

from slicecal.model import Instance, Request, SliceType, Tenant
from slicecal.workload import GenConfig, generate


def mk_request(rid, tenant=0, slice=SliceType.EMBB, arrival=1, demand=1, duration=1):
    return Request(
        id=rid, tenant=tenant, slice=slice,
        arrival=arrival, demand=demand, duration=duration,
    )


def mk_instance(horizon=10, capacity=5, tenants=None, requests=()):
    if tenants is None:
        tenants = (Tenant(id=0, reserved=capacity),)
    return Instance(
        horizon=horizon, capacity=capacity,
        tenants=tuple(tenants), requests=tuple(requests),
    )


def oracle_scale_instance(seed):
    """A small random instance whose solution space fits the
    enumeration oracle (K<=6, N<=5, R<=4, T<=3)."""
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    r = rng.randint(1, 4)
    t = rng.randint(1, 3)
    k = rng.randint(1, 6)
    shares = [rng.random() for _ in range(t)]
    total = sum(shares)
    shares = tuple(s / total for s in shares)
    cfg = GenConfig(
        horizon=n, capacity=r, num_requests=k,
        tenant_shares=shares, embb_fraction=0.5,
        arrival_range=(1, n), demand_range=(1, 4),
        duration_range=(1, 3), seed=seed,
    )
    return generate(cfg)


@pytest.fixture(scope="session")
def oracle_instances():
    return [oracle_scale_instance(seed) for seed in range(200)]
