from __future__ import annotations

import io
import json
import shutil
from importlib import resources

import pytest

from oddrep.cli import main
from oddrep.config import ConfigError, ManifestError, RunConfig, build_manifest, check_manifest, load_config
from oddrep.verify import odd_primitive_actions, run_suite, report_text, sync_catalog


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_chartab_named_and_gens():
    code, text = run("chartab", "--group", "S4")
    assert code == 0
    rows = [l for l in text.splitlines() if l.startswith("X.")]
    assert [r.split()[0] for r in rows] == ["X.1", "X.2", "X.3", "X.4", "X.5"]
    assert [int(r.split("d=")[1].split(")")[0]) for r in rows] == [1, 1, 2, 3, 3]
    code, text = run("chartab", "--gens", "(0 1 2)", "--json")
    assert code == 0 and json.loads(text)["degrees"] == [1, 1, 1]
    code, text = run("chartab", "--group", "Q8", "--json")
    assert json.loads(text)["degrees"] == [1, 1, 1, 1, 2]


def test_exit_codes(tmp_path):
    assert run("chartab", "--gens", "(0 1")[0] == 2
    assert run("chartab", "--group", "nonexistent")[0] == 2
    assert run("verify", "--suite", "bogus")[0] == 2
    assert run("compute-f")[0] == 2
    assert run("compute-f", "--n", "6", "--catalog-dir", str(tmp_path))[0] == 3
    assert run("verify", "--suite", "replay", "--threads", "0")[0] == 2


@pytest.mark.parametrize("n,value", [(0, 1), (1, 2), (2, 4)])
def test_compute_f_small(tmp_path, n, value):
    code, text = run("compute-f", "--n", str(n), "--catalog-dir", str(tmp_path))
    assert code == 0
    assert text.splitlines()[0] == f"f({n}) = {value}"
    assert (tmp_path / f"odd_gl{n}_2.jsonl").exists()
    # a second run validates the file it finds
    code, text = run("compute-f", "--n", str(n), "--catalog-dir", str(tmp_path), "--json")
    data = json.loads(text)
    assert code == 0 and data["value"] == value and data["complete"] and "validated" in data["catalog"]


def test_tampered_catalog_fails(tmp_path):
    assert run("compute-f", "--n", "2", "--catalog-dir", str(tmp_path))[0] == 0
    path = tmp_path / "odd_gl2_2.jsonl"
    lines = path.read_text().splitlines()
    entry = json.loads(lines[1])
    entry["k_gv"] += 1
    lines[1] = json.dumps(entry, sort_keys=True, separators=(",", ":"))
    path.write_text("\n".join(lines) + "\n")
    assert run("compute-f", "--n", "2", "--catalog-dir", str(tmp_path))[0] == 1


def test_config_file_and_env(tmp_path, monkeypatch):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"threads": 3, "precision_bits": 96}))
    monkeypatch.setenv("ODDREP_CONFIG", str(cfgfile))
    cfg = load_config()
    assert (cfg.threads, cfg.precision_bits) == (3, 96)
    assert load_config(overrides={"threads": 2}).threads == 2
    cfgfile.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ConfigError):
        load_config()
    cfgfile.write_text(json.dumps({"domain_cap": 0}))
    with pytest.raises(ConfigError):
        load_config()
    cfgfile.write_text(json.dumps({"corpus_path": str(tmp_path / "missing.json")}))
    with pytest.raises(ConfigError):
        load_config()


def test_manifest_detects_drift(tmp_path):
    check_manifest()
    data = resources.files("oddrep").joinpath("data")
    for name in ("corpus.json", "step7_ledger.json", "conway.json"):
        (tmp_path / name).write_bytes(data.joinpath(name).read_bytes())
    assert build_manifest(tmp_path)["sha256"] == json.loads(data.joinpath("manifest.json").read_text())["sha256"]
    ledger = tmp_path / "step7_ledger.json"
    ledger.write_text(ledger.read_text().replace("511", "512"))
    cfg = RunConfig(ledger_path=str(ledger))
    with pytest.raises(ManifestError):
        check_manifest(cfg)
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"ledger_path": str(ledger)}))
    assert run("verify", "--suite", "replay", "--config", str(cfgfile))[0] == 2


def test_sync_catalog_replaces_partial(tmp_path):
    from oddrep.catalog import build_catalog, catalog_path, write_catalog

    partial = build_catalog(3, order_cap=3)
    partial.complete = False
    write_catalog(partial, catalog_path(tmp_path, 3))
    ok, msg = sync_catalog(build_catalog(3), tmp_path)
    assert ok and "written" in msg


def test_suite_reports_are_thread_independent(tmp_path):
    a = report_text(run_suite("mckay", RunConfig(threads=1, catalog_dir=str(tmp_path))))
    b = report_text(run_suite("mckay", RunConfig(threads=4, catalog_dir=str(tmp_path))))
    assert a == b
    assert "[PASS] mckay/global count equals local count" in a


def test_odd_primitive_actions():
    names = [n for n, _ in odd_primitive_actions()]
    assert names == ["Z3", "Z5", "Z7", "7:3", "Z11", "11:5", "Z13", "13:3"]
    orders = [G.order for _, G in odd_primitive_actions()]
    assert orders == [3, 5, 7, 21, 11, 55, 13, 39]
