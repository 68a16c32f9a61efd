import json
from dataclasses import replace

from holonomy import cli
from holonomy.catalog import REPORT_FIELDS, load_catalog


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_v3_human_output(capsys):
    code, out, _ = run(capsys, "analyze", "sl2-V3")
    assert code == 0
    assert "dim_K=3 dim_K1=4 dim_K2=1 characters=(3,1,0,0)" in out
    assert "involutive=not_involutive" in out
    assert "Table IV" in out  # comparisons carry their citation


def test_analyze_rejects_trivial_module(capsys):
    code, _, err = run(capsys, "analyze", "sl2-V0")
    assert code == 2
    assert "trivial" in err


def test_analyze_unknown_target(capsys):
    code, _, err = run(capsys, "analyze", "no-such-entry")
    assert code == 2 and "no-such-entry" in err


def test_analyze_declared_needs_force(capsys):
    code, _, err = run(capsys, "analyze", "e7-7")
    assert code == 2 and "declared" in err


def test_analyze_json_is_schema_stable(capsys):
    code, out, _ = run(capsys, "analyze", "leftover-sl2R-lambda0", "--json")
    assert code == 0
    d = json.loads(out)
    assert list(d) == list(REPORT_FIELDS)
    assert d["characters"] == [9, 9, 5, 1]
    assert d["generality"] == [1, 4]
    _, again, _ = run(capsys, "analyze", "leftover-sl2R-lambda0", "--json")
    assert again == out


def test_analyze_seed_and_trials_flags(capsys):
    code, out, _ = run(capsys, "analyze", "so-3-0", "--json", "--seed", "9", "--trials", "2")
    assert code == 0 and json.loads(out)["seed"] == 9
    code, _, _ = run(capsys, "analyze", "so-3-0", "--trials", "0")
    assert code == 2


def test_analyze_timing_flag(capsys):
    _, out, _ = run(capsys, "analyze", "sl2-V2", "--json", "--timing")
    assert isinstance(json.loads(out)["timing"], dict)


def test_analyze_recipe_files(capsys, tmp_path):
    y = tmp_path / "v3.yaml"
    y.write_text("base: {family: sl2_irrep, k: 3}\n")
    code, out, _ = run(capsys, "analyze", str(y))
    assert code == 0 and "dim_K=3" in out
    j = tmp_path / "v1c.json"
    j.write_text(json.dumps({"recipe": {"base": {"family": "sl2_irrep", "k": 1}, "realify": True, "center": "J"}}))
    code, out, _ = run(capsys, "analyze", str(j), "--json")
    assert code == 0 and json.loads(out)["dim_K"] == 9
    bad = tmp_path / "bad.yaml"
    bad.write_text("base: {family: sl2_irrep, k: 2}\nfunctors: [{op: twist}]\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "functors[0].op" in err


def test_complex_counts_printed(capsys):
    _, out, _ = run(capsys, "analyze", "so-complex-3")
    assert "complex counts:" in out and "generality=3 of 3" in out


def test_verify_declared(capsys):
    code, out, _ = run(capsys, "verify", "--tier", "declared")
    assert code == 0
    assert "0 entries verified (all declared)" in out


def test_verify_failure_output(capsys, monkeypatch):
    entries = load_catalog()
    v3 = next(e for e in entries if e.id == "sl2-V3")
    bad = replace(v3, expected={"dim_K1": {"value": 5, "cite": "stated four"}})
    monkeypatch.setattr(cli, "load_catalog", lambda: [bad])
    code, out, _ = run(capsys, "verify", "--tier", "core")
    assert code == 1
    assert "sl2-V3.dim_K1: expected 5 [stated four], got 4" in out


def test_verify_small_subset_passes(capsys, monkeypatch):
    entries = [e for e in load_catalog() if e.id.startswith("sl2-V") and e.tier == "core"]
    monkeypatch.setattr(cli, "load_catalog", lambda: entries)
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert f"{len(entries)} entries verified, 0 failed" in out


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog", "--tier", "core")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert rows and all(r.split()[1] == "core" for r in rows)
    _, out, _ = run(capsys, "catalog", "--grep", "spin")
    ids = [r.split()[0] for r in out.strip().splitlines()[1:]]
    assert "spin-7-0" in ids and all("spin" in i for i in ids)
    _, full1, _ = run(capsys, "catalog")
    _, full2, _ = run(capsys, "catalog")
    assert full1 == full2


def test_usage_errors(capsys):
    code, _, _ = run(capsys)
    assert code == 2
    code, _, _ = run(capsys, "verify", "--tier", "bogus")
    assert code == 2
