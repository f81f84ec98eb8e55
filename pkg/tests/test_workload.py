import pytest

from slicecal.model import SliceType
from slicecal.workload import (
    ConfigInvalid,
    GenConfig,
    config_from_dict,
    config_to_dict,
    generate,
    reservations,
)


def test_default_reservations():
    assert reservations((0.2, 0.2, 0.6), 20) == [4, 4, 12]


def test_reservation_remainder_to_largest_share():
    assert reservations((0.3, 0.3, 0.4), 10) == [3, 3, 4]
    # 0.25*30 etc. leave no remainder; uneven capacity does
    assert sum(reservations((0.2, 0.2, 0.6), 25)) == 25
    assert reservations((0.5, 0.5), 5) == [3, 2]


@pytest.mark.parametrize("capacity", [7, 13, 20, 25, 99])
def test_reservations_sum_to_capacity(capacity):
    assert sum(reservations((0.2, 0.2, 0.6), capacity)) == capacity


def test_empty_request_list():
    inst = generate(GenConfig(num_requests=0, seed=1))
    assert inst.requests == ()
    assert [t.reserved for t in inst.tenants] == [4, 4, 12]


def test_same_seed_identical():
    cfg = GenConfig(num_requests=50, seed=123)
    assert generate(cfg) == generate(cfg)


def test_different_seed_differs():
    assert generate(GenConfig(seed=1)) != generate(GenConfig(seed=2))


def test_requests_within_configured_ranges():
    inst = generate(GenConfig(num_requests=200, seed=9))
    for r in inst.requests:
        assert 1 <= r.arrival <= 5
        assert 1 <= r.demand <= 5
        assert 1 <= r.duration <= 5
        assert 0 <= r.tenant <= 2


def test_slice_and_tenant_distribution():
    # 10,000 requests: EMBB fraction within 3 sigma of 0.5,
    # per-tenant counts within 3 sigma of K/3
    total = 10_000
    embb = 0
    per_tenant = [0, 0, 0]
    for seed in range(100):
        inst = generate(GenConfig(num_requests=100, seed=seed))
        for r in inst.requests:
            if r.slice is SliceType.EMBB:
                embb += 1
            per_tenant[r.tenant] += 1
    assert 0.47 <= embb / total <= 0.53
    sigma = (total * (1 / 3) * (2 / 3)) ** 0.5
    for count in per_tenant:
        assert abs(count - total / 3) <= 3 * sigma


@pytest.mark.parametrize(
    "kwargs",
    [
        {"tenant_shares": (0.5, 0.4)},  # does not sum to 1
        {"tenant_shares": ()},
        {"embb_fraction": 1.5},
        {"arrival_range": (0, 5)},
        {"demand_range": (3, 2)},
        {"arrival_range": (1, 11)},  # beyond horizon
        {"horizon": 0},
    ],
)
def test_invalid_configs(kwargs):
    with pytest.raises(ConfigInvalid):
        GenConfig(**kwargs)


def test_config_round_trip():
    cfg = GenConfig(num_requests=30, seed=77, capacity=25)
    assert config_from_dict(config_to_dict(cfg)) == cfg
