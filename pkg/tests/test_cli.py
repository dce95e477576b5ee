"""Command-line interface: config validation, artifacts, determinism, exit codes."""

import csv
import json

import pytest

from gshift.cli import ConfigError, ExperimentConfig, main, parse_config

PHI1 = {
    "map": {"kind": "catalog", "rule": "successor"},
    "family_size": 3,
    "lengths": {"variant": "plain", "count": 8},
    "windows": [[1], [1, 2]],
    "schedule": {"kind": "block_boundaries", "r_max": 6},
    "eps_low": "1/4",
    "eps_high": "1/4",
}


def _write_config(tmp_path, obj, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def _run(tmp_path, *argv, config=None):
    args = list(argv)
    if config is not None:
        args = ["--config", _write_config(tmp_path, config), *args]
    return main(["--out", str(tmp_path / "out"), *args])


# ---------------------------------------------------------------------------
# Configuration parsing.
# ---------------------------------------------------------------------------


def test_config_round_trips():
    cfg = parse_config(PHI1)
    again = parse_config(cfg.to_json())
    assert again.to_json() == cfg.to_json()


def test_config_defaults_fill_in():
    cfg = parse_config({"map": {"kind": "catalog", "rule": "successor"}})
    assert cfg.family_size == 3
    assert cfg.lengths_variant == "plain"
    assert cfg.windows == ((1,), (1, 2))


@pytest.mark.parametrize("broken, fragment", [
    ({}, "config.map"),
    ({"map": {"kind": "catalog", "rule": "nope"}}, "config.map"),
    ({"map": PHI1["map"], "family_size": 1}, "family_size"),
    ({"map": PHI1["map"], "lengths": {"variant": "fancy"}}, "variant"),
    ({"map": PHI1["map"], "windows": [[0]]}, "windows[0]"),
    ({"map": PHI1["map"], "schedule": {"kind": "explicit", "horizons": []}}, "horizons"),
    ({"map": PHI1["map"], "eps_low": "one quarter"}, "eps"),
])
def test_config_errors_name_the_field(broken, fragment):
    with pytest.raises(ConfigError) as err:
        parse_config(broken)
    assert fragment in str(err.value)


def test_unreadable_config_exits_2(tmp_path, capsys):
    assert main(["--config", str(tmp_path / "missing.json"), "classify"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["--config", str(bad), "classify"]) == 2


def test_config_required_for_map_commands(tmp_path):
    assert main(["--out", str(tmp_path), "classify"]) == 2


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def test_classify_writes_schema_report(tmp_path, capsys):
    assert _run(tmp_path, "classify", config=PHI1) == 0
    blob = json.loads((tmp_path / "out" / "classify.json").read_text())
    assert blob["schema"] == "gshift-classify/1"
    assert blob["profile"]["injective"]["truth"] == "proven_true"
    printed = json.loads(capsys.readouterr().out)
    assert printed == blob


def test_predict_reports_all_five_flavors(tmp_path, capsys):
    assert _run(tmp_path, "predict", config=PHI1) == 0
    blob = json.loads((tmp_path / "out" / "predict.json").read_text())
    assert set(blob["prediction"]) == {
        "li_yorke", "distributional", "omega",
        "dense_distributional", "transitive_distributional"}


def test_counterexamples_pass_and_write_csv(tmp_path, capsys):
    assert _run(tmp_path, "counterexamples") == 0
    with open(tmp_path / "out" / "counterexamples.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 9
    assert all(r["pass"] == "true" for r in rows)
    assert "9/9" in capsys.readouterr().out


def test_stats_csv_is_deterministic(tmp_path, capsys):
    cfg = dict(PHI1, schedule={"kind": "block_boundaries", "r_max": 5})
    assert _run(tmp_path, "stats", config=cfg) == 0
    first = (tmp_path / "out" / "stats.csv").read_bytes()
    assert _run(tmp_path, "stats", config=cfg) == 0
    second = (tmp_path / "out" / "stats.csv").read_bytes()
    assert first == second
    header = first.decode().splitlines()[0]
    assert header == ("pair_id,window_id,n,count,fraction_num,fraction_den,"
                      "running_min,running_max")


def test_verify_rolls_up_pass_for_translation(tmp_path, capsys):
    assert _run(tmp_path, "verify", config=PHI1) == 0
    out = capsys.readouterr().out
    assert "PASS proof-bounds" in out
    assert "PASS dc-surrogate" in out
    assert "rollup: PASS" in out
    blob = json.loads((tmp_path / "out" / "verify.json").read_text())
    assert blob["rollup"] is True
    assert (tmp_path / "out" / "stats.csv").exists()


def test_verify_skips_construction_for_non_chaotic_map(tmp_path, capsys):
    cfg = {"map": {"kind": "catalog", "rule": "parity_up"}}
    assert _run(tmp_path, "verify", config=cfg) == 0
    out = capsys.readouterr().out
    assert "SKIP construction" in out


def test_horizon_cap_truncates_and_can_empty_the_schedule(tmp_path, capsys):
    assert _run(tmp_path, "--horizon-cap", "250", "verify", config=PHI1) == 0
    assert _run(tmp_path, "--horizon-cap", "0", "verify", config=PHI1) == 2


def test_construct_dense_manifest_lists_patterns(tmp_path, capsys):
    cfg = {
        "map": {"kind": "catalog", "rule": "square_plus_one"},
        "family_size": 6,
    }
    assert _run(tmp_path, "construct-dense", config=cfg) == 0
    blob = json.loads((tmp_path / "out" / "family-dense.json").read_text())
    assert len(blob["patches"]) == 6
    assert blob["patches"][0]["pattern"] == {"window": [1], "symbols": ["p"]}


def test_construct_transitive_switches_to_weave(tmp_path, capsys):
    cfg = {
        "map": {"kind": "catalog", "rule": "successor"},
        "family_size": 2,
        "lengths": {"variant": "plain", "count": 10},
    }
    assert _run(tmp_path, "construct-transitive", config=cfg) == 0
    blob = json.loads((tmp_path / "out" / "family-transitive.json").read_text())
    assert blob["variant"] == "weave"
    assert blob["chain_representatives"]


def test_construct_rejects_map_without_infinite_orbit(tmp_path, capsys):
    cfg = {"map": {"kind": "catalog", "rule": "parity_up"}}
    assert _run(tmp_path, "construct-dc", config=cfg) == 1
