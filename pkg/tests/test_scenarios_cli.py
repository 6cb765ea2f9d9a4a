"""Scenario files, the seeded generator, and the command line round trip."""

import json
import subprocess
import sys

import pytest

from agvtime.cli import EXIT_AUDIT, EXIT_FAULT, EXIT_INVALID, EXIT_OK, main
from agvtime.graph import InvalidParameterError, build_adjacency_links, build_grid, subdivide
from agvtime.scenarios import (
    Scenario,
    from_json,
    generate,
    materialise,
    to_json,
    validate_scenario,
)


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "agvtime", *args],
        capture_output=True,
        text=True,
    )


def drop_runtime(csv_text):
    rows = []
    for line in csv_text.strip().splitlines():
        cols = line.split(",")
        del cols[3]
        rows.append(cols)
    return rows


# ---------------------------------------------------------------- scenarios


def test_json_roundtrip_exact():
    sc = generate(grid=6, agvs=3, demands=8, seed=17, subdivisions=2, link_radius=3)
    assert from_json(to_json(sc)) == sc


def test_generate_is_deterministic():
    a = generate(grid=10, agvs=4, demands=10, seed=7)
    b = generate(grid=10, agvs=4, demands=10, seed=7)
    assert to_json(a) == to_json(b)
    c = generate(grid=10, agvs=4, demands=10, seed=8)
    assert to_json(c) != to_json(a)


def test_generated_scenarios_validate():
    # Generator property run: everything it emits must be runnable.
    n = 0
    for seed in range(25):
        for grid, agvs, demands, s in (
            (6, 2, 0, 1),
            (8, 4, 5, 2),
            (10, 6, 10, 3),
            (8, 3, 8, 2),
        ):
            sc = generate(
                grid=grid,
                agvs=agvs,
                demands=demands,
                seed=seed,
                weight=12,
                subdivisions=s,
                link_radius=2 * s - 1,
            )
            assert validate_scenario(sc) is None
            n += 1
    assert n == 100


def test_demands_avoid_anchors_and_subdivision_nodes():
    sc = generate(grid=8, agvs=2, demands=30, seed=3, weight=12, subdivisions=3, link_radius=2)
    base = build_grid(8, 12)
    for d in sc.demands:
        for node in (d["pickup"], d["dropoff"]):
            assert node < base.num_nodes
            assert node not in base.anchors
        assert d["pickup"] != d["dropoff"]
    assert len({d["id"] for d in sc.demands}) == len(sc.demands)


def test_placements_spread_beyond_link_radius():
    sc = generate(grid=10, agvs=8, demands=0, seed=5, subdivisions=1, link_radius=1)
    g, links, placements, _ = materialise(sc)
    spots = [spec.resource for spec in placements.values()]
    assert len(set(spots)) == len(spots)
    for i, p in enumerate(spots):
        for q in spots[i + 1 :]:
            assert q not in links.linked[p]


def test_generate_rejects_radius_above_cap():
    with pytest.raises(InvalidParameterError):
        generate(grid=6, agvs=2, demands=0, seed=0, subdivisions=2, link_radius=4)
    generate(grid=6, agvs=2, demands=0, seed=0, subdivisions=2, link_radius=3)


def test_generate_rejects_impossible_density():
    with pytest.raises(InvalidParameterError):
        generate(grid=4, agvs=10, demands=0, seed=0)


def test_generate_rejects_fleet_beyond_anchors():
    with pytest.raises(InvalidParameterError):
        generate(grid=4, agvs=13, demands=0, seed=0)


def test_validate_scenario_reports_bad_fields():
    sc = generate(grid=6, agvs=2, demands=2, seed=1)
    bad = Scenario(
        graph=sc.graph,
        placements=sc.placements,
        demands=sc.demands,
        preset="no-such-preset",
    )
    assert "preset" in validate_scenario(bad)
    off = Scenario(
        graph=sc.graph,
        placements=({"agv": 1, "resource": 10_000},),
        demands=sc.demands,
    )
    assert validate_scenario(off) is not None


def stalling_scenario():
    # Two AGVs whose pinned start footprints cover the whole graph block
    # each other forever, whichever anchoriser runs.
    base = build_grid(4, 4)
    interior = sorted(set(range(base.num_nodes)) - base.anchors)
    return Scenario(
        graph={"type": "grid", "n": 4, "weight": 4},
        placements=(
            {"agv": 1, "resource": interior[0]},
            {"agv": 2, "resource": interior[-1]},
        ),
        demands=(),
        link_radius=50,
    )


def test_stalling_scenario_still_validates():
    assert validate_scenario(stalling_scenario()) is None


# ---------------------------------------------------------------------- cli


def test_cli_generate_then_run(tmp_path):
    gen = run_cli(
        ["generate", "--grid", "6", "--agvs", "3", "--demands", "5", "--seed", "11",
         "--out", str(tmp_path)]
    )
    assert gen.returncode == EXIT_OK, gen.stderr
    scenario = tmp_path / "scenario.json"
    assert scenario.exists()

    out = tmp_path / "run1"
    res = run_cli(["run", "--scenario", str(scenario), "--out", str(out)])
    assert res.returncode == EXIT_OK, res.stderr
    assert res.stdout.startswith("ok makespan=")
    doc = json.loads((out / "timetable.json").read_text())
    assert doc["metrics"]["makespan"] >= 0
    assert (out / "metrics.csv").read_text().startswith("suite,param,algorithm,")


def test_cli_regenerate_and_rerun_byte_identical(tmp_path):
    args = ["generate", "--grid", "8", "--agvs", "4", "--demands", "10", "--seed", "7"]
    d1, d2 = tmp_path / "a", tmp_path / "b"
    assert run_cli([*args, "--out", str(d1)]).returncode == EXIT_OK
    assert run_cli([*args, "--out", str(d2)]).returncode == EXIT_OK
    blob = (d1 / "scenario.json").read_bytes()
    assert blob == (d2 / "scenario.json").read_bytes()

    r1, r2 = tmp_path / "r1", tmp_path / "r2"
    for d in (r1, r2):
        res = run_cli(["run", "--scenario", str(d1 / "scenario.json"), "--out", str(d)])
        assert res.returncode == EXIT_OK, res.stderr
    assert (r1 / "timetable.json").read_bytes() == (r2 / "timetable.json").read_bytes()
    m1 = drop_runtime((r1 / "metrics.csv").read_text())
    m2 = drop_runtime((r2 / "metrics.csv").read_text())
    assert m1 == m2


def test_cli_empty_demands_from_anchor_is_trivial(tmp_path, capsys):
    base = build_grid(4, 5)
    anchor = sorted(base.anchors)[0]
    sc = Scenario(
        graph={"type": "grid", "n": 4, "weight": 5},
        placements=({"agv": 1, "resource": anchor},),
        demands=(),
    )
    f = tmp_path / "sc.json"
    f.write_text(to_json(sc))
    code = main(["run", "--scenario", str(f), "--out", str(tmp_path / "out")])
    assert code == EXIT_OK
    assert "ok makespan=0 total_distance=0" in capsys.readouterr().out


def test_cli_preset_override_lands_in_metrics(tmp_path, capsys):
    gen = main(
        ["generate", "--grid", "6", "--agvs", "2", "--demands", "3", "--seed", "2",
         "--out", str(tmp_path)]
    )
    assert gen == EXIT_OK
    capsys.readouterr()
    out = tmp_path / "out"
    code = main(
        ["run", "--scenario", str(tmp_path / "scenario.json"),
         "--preset", "full-manhattan", "--out", str(out)]
    )
    assert code == EXIT_OK
    row = (out / "metrics.csv").read_text().strip().splitlines()[-1]
    assert row.split(",")[2] == "full-manhattan"


def test_cli_injected_conflict_fails_audit(tmp_path, capsys):
    gen = main(
        ["generate", "--grid", "6", "--agvs", "2", "--demands", "2", "--seed", "4",
         "--out", str(tmp_path)]
    )
    assert gen == EXIT_OK
    scenario = str(tmp_path / "scenario.json")
    first = tmp_path / "plain"
    assert main(["run", "--scenario", scenario, "--out", str(first)]) == EXIT_OK
    doc = json.loads((first / "timetable.json").read_text())
    final = doc["agvs"][0]["steps"][-1]
    assert final["end"] == "inf"
    capsys.readouterr()

    inject = f"{final['resource']},99,0,inf"
    code = main(
        ["run", "--scenario", scenario, "--inject", inject,
         "--out", str(tmp_path / "clash")]
    )
    assert code == EXIT_AUDIT
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "audit"


def test_cli_invalid_parameters_exit_code(tmp_path, capsys):
    code = main(["run", "--grid", "6", "--agvs", "2"])
    assert code == EXIT_INVALID
    code = main(
        ["generate", "--grid", "6", "--agvs", "2", "--demands", "0",
         "--subdivide", "2", "--link-radius", "4", "--out", str(tmp_path)]
    )
    assert code == EXIT_INVALID
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "invalid"


def test_cli_stalled_anchorisation_exit_code(tmp_path, capsys):
    f = tmp_path / "stall.json"
    f.write_text(to_json(stalling_scenario()))
    for anchoriser in ("naive", "greedy"):
        code = main(
            ["run", "--scenario", str(f), "--anchoriser", anchoriser,
             "--out", str(tmp_path / anchoriser)]
        )
        assert code == EXIT_FAULT
        err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert err["error"] == "stalled"


def test_cli_bench_reservers_smallest(tmp_path, capsys):
    code = main(
        ["bench", "--suite", "reservers", "--grid", "4", "--subdivisions", "1",
         "--out", str(tmp_path)]
    )
    assert code == EXIT_OK
    text = (tmp_path / "bench_reservers.csv").read_text()
    lines = text.strip().splitlines()
    assert lines[0].startswith("suite,param,algorithm,")
    body = [l.split(",") for l in lines[1:]]
    assert [b[2] for b in body] == ["naive", "boundary"]
    assert all(b[-1] == "equal" for b in body)
