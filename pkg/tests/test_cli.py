import json

import pytest

from slicecal.cli import main
from slicecal.exact import SolveMode, enumerate_all
from slicecal.model import instance_from_dict, schedule_from_dict, validate
from slicecal.workload import GenConfig, config_to_dict


@pytest.fixture
def cfg_path(tmp_path):
    path = tmp_path / "cfg.json"
    cfg = GenConfig(num_requests=12, seed=42)
    path.write_text(json.dumps(config_to_dict(cfg)))
    return path


def test_generate_solve_validate_pipeline(tmp_path, cfg_path, capsys):
    inst_path = tmp_path / "inst.json"
    sched_path = tmp_path / "sched.json"

    assert main(["generate", "--config", str(cfg_path), "--out", str(inst_path)]) == 0
    assert main([
        "solve", "--instance", str(inst_path), "--algo", "sra",
        "--out", str(sched_path),
    ]) == 0
    assert main([
        "validate", "--instance", str(inst_path), "--schedule", str(sched_path),
    ]) == 0
    out = capsys.readouterr().out
    assert "feasible" in out

    inst = instance_from_dict(json.loads(inst_path.read_text()))
    sched = schedule_from_dict(json.loads(sched_path.read_text()))
    assert validate(inst, sched).feasible


def test_solve_dra_passes_tenant_caps(tmp_path, cfg_path):
    inst_path = tmp_path / "inst.json"
    sched_path = tmp_path / "sched.json"
    main(["generate", "--config", str(cfg_path), "--out", str(inst_path)])
    main([
        "solve", "--instance", str(inst_path), "--algo", "dra",
        "--out", str(sched_path),
    ])
    assert main([
        "validate", "--instance", str(inst_path), "--schedule", str(sched_path),
        "--tenant-caps",
    ]) == 0


def test_exact_solve_matches_oracle(tmp_path, capsys):
    cfg = GenConfig(
        horizon=4, capacity=3, num_requests=5,
        tenant_shares=(0.5, 0.5), arrival_range=(1, 3),
        demand_range=(1, 2), duration_range=(1, 2), seed=6,
    )
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config_to_dict(cfg)))
    inst_path = tmp_path / "inst.json"
    main(["generate", "--config", str(cfg_path), "--out", str(inst_path)])
    assert main([
        "solve", "--instance", str(inst_path), "--algo", "exact",
        "--mode", "shared",
    ]) == 0
    out = capsys.readouterr().out
    inst = instance_from_dict(json.loads(inst_path.read_text()))
    expected = enumerate_all(inst, SolveMode.SHARED)
    assert f"welfare={expected}" in out


def test_exact_requires_mode(tmp_path, cfg_path, capsys):
    inst_path = tmp_path / "inst.json"
    main(["generate", "--config", str(cfg_path), "--out", str(inst_path)])
    assert main(["solve", "--instance", str(inst_path), "--algo", "exact"]) == 1
    assert "--mode" in capsys.readouterr().err


def test_validate_infeasible_exits_2(tmp_path, cfg_path, capsys):
    inst_path = tmp_path / "inst.json"
    main(["generate", "--config", str(cfg_path), "--out", str(inst_path)])
    inst = instance_from_dict(json.loads(inst_path.read_text()))
    bad_rid = inst.requests[0].id
    sched_path = tmp_path / "bad.json"
    sched_path.write_text(json.dumps({
        "starts": {str(bad_rid): inst.requests[0].arrival},
        "assignment": [],  # accepted but no units: DEMAND violation
    }))
    assert main([
        "validate", "--instance", str(inst_path), "--schedule", str(sched_path),
    ]) == 2
    assert "DEMAND" in capsys.readouterr().out


def test_malformed_json_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["generate", "--config", str(bad), "--out", str(tmp_path / "x")]) == 1
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_missing_file_exit_1(tmp_path, capsys):
    assert main([
        "solve", "--instance", str(tmp_path / "nope.json"), "--algo", "dra",
    ]) == 1
    assert "no such file" in capsys.readouterr().err


def test_invalid_config_field_named(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    data = config_to_dict(GenConfig(seed=0))
    data["embb_fraction"] = 2.0
    cfg_path.write_text(json.dumps(data))
    assert main([
        "generate", "--config", str(cfg_path), "--out", str(tmp_path / "x"),
    ]) == 1
    assert "embb_fraction" in capsys.readouterr().err


def test_seed_override_changes_instance(tmp_path, cfg_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    c = tmp_path / "c.json"
    main(["generate", "--config", str(cfg_path), "--out", str(a)])
    main(["generate", "--config", str(cfg_path), "--out", str(b), "--seed", "7"])
    main(["generate", "--config", str(cfg_path), "--out", str(c), "--seed", "7"])
    assert a.read_text() != b.read_text()
    assert b.read_text() == c.read_text()


def test_sweep_and_usage_report(tmp_path):
    spec = {
        "varied": "requests",
        "points": [0, 5],
        "base": config_to_dict(GenConfig(seed=3)),
        "seeds_per_point": 3,
        "algorithms": ["dra", "sra"],
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    csv_path = tmp_path / "sweep.csv"
    assert main(["sweep", "--spec", str(spec_path), "--out", str(csv_path)]) == 0
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0].startswith("sweep,point,algorithm,")
    assert len(lines) == 1 + 2 * 2

    usage_path = tmp_path / "usage.csv"
    assert main([
        "usage-report", "--requests", "5", "--capacity", "20",
        "--seeds", "2", "--out", str(usage_path),
    ]) == 0
    assert usage_path.read_text().startswith("algorithm,tenant,")


def test_sweep_identical_invocations_byte_identical(tmp_path):
    spec = {
        "varied": "capacity",
        "points": [5, 10],
        "base": config_to_dict(GenConfig(num_requests=8, seed=21)),
        "seeds_per_point": 4,
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(["sweep", "--spec", str(spec_path), "--out", str(out1)]) == 0
    assert main(["sweep", "--spec", str(spec_path), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_node_budget_env(tmp_path, cfg_path, capsys, monkeypatch):
    inst_path = tmp_path / "inst.json"
    main(["generate", "--config", str(cfg_path), "--out", str(inst_path)])
    monkeypatch.setenv("SLICE_CAL_NODE_BUDGET", "1")
    assert main([
        "solve", "--instance", str(inst_path), "--algo", "exact",
        "--mode", "shared",
    ]) == 0
    assert "budget exhausted" in capsys.readouterr().err
