import json
import subprocess
import sys

import pytest

from freybound.cache import cache_key
from freybound.cli import main
from freybound.records import FORMAT_VERSION


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines()]


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv("FREYBOUND_CACHE", raising=False)


def test_regular(capsys):
    status, out, _ = run(capsys, "regular", "5")
    assert status == 0 and "regular" in out and "irregular" not in out
    status, out, _ = run(capsys, "regular", "37")
    assert status == 2 and "irregular at 32" in out
    status, _, err = run(capsys, "regular", "4")
    assert status == 1 and "error" in err


def test_usage_errors_exit_1(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "regular", "five")[0] == 1
    assert run(capsys, "traces", "field", "5")[0] == 1
    assert run(capsys, "regular", "5", "--workers", "0")[0] == 1


def test_traces(capsys):
    status, out, _ = run(capsys, "traces", "rational", "2", "--format", "records")
    assert status == 0 and len(out.splitlines()) == 5
    status, out, _ = run(capsys, "traces", "field", "5", "2", "--format", "records")
    recs = records(out)
    assert status == 0 and len(recs) == 15
    assert all(r["v"] == FORMAT_VERSION and r["kind"] == "trace" for r in recs)
    assert run(capsys, "traces", "rational", "1")[0] == 1


def test_local(capsys):
    status, out, _ = run(capsys, "local", "2", "5", "--format", "records")
    recs = records(out)
    sols = [r for r in recs if r["kind"] == "local_solution"]
    assert status == 0 and len(sols) == 4
    assert all(r["p_class"] == 1 for r in sols)
    assert [r["triple"] for r in sols if r["flags"]["z0"]] == [[0, 0, 0], [1, 1, 0]]
    status, out, _ = run(capsys, "local", "3", "5", "--format", "records")
    counts = {r["p_class"]: r["solutions"] for r in records(out) if r["kind"] == "exponent_class"}
    assert counts == {1: 9, 2: 9}
    assert run(capsys, "local", "4", "5")[0] == 1


def test_local_with_family(capsys, tmp_path):
    fam = tmp_path / "fam.txt"
    fam.write_text("genus 2\nh\n0\n1\n1\nf\n1 1\n0 1\n0\n0\n0 1\n1\n")
    status, out, _ = run(capsys, "local", "2", "5", "--family", str(fam), "--format", "records")
    recs = records(out)
    assert status == 0
    assert sorted(r["coords"] for r in recs if r["kind"] == "trace") == [["-1", "-2"], ["1", "2"]]


def test_zeta(capsys, tmp_path):
    model = tmp_path / "m.txt"
    model.write_text("3 1\n-\n1 0 0 0 0 1\n2\n")
    status, out, _ = run(capsys, "zeta", str(model), "--format", "records")
    recs = records(out)
    assert status == 0
    assert next(r for r in recs if r["kind"] == "lpoly")["coeffs"] == ["1", "0", "0", "0", "9"]
    assert [r["N"] for r in recs if r["kind"] == "count"] == ["4", "10", "28"]
    model.write_text("5 1\n-\n0 0 0 1\n1\n")
    assert run(capsys, "zeta", str(model))[0] == 1              # singular
    assert run(capsys, "zeta", str(tmp_path / "missing"))[0] == 1


def test_bound(capsys):
    status, out, _ = run(capsys, "bound", "2", "--r", "5", "--format", "records")
    head = records(out)[0]
    assert status == 0 and head["B_total"] == "72000" and head["c1"] == "5"
    status, out, _ = run(capsys, "bound", "2", "--trace", "2", "--trace", "-1", "--format", "records")
    head = records(out)[0]
    assert head["B_res"] == "40" and head["disc"] == "1"
    status, out, _ = run(capsys, "bound", "2", "--r", "5", "--traces", "field",
                         "--trace", "1,2", "--format", "records")
    assert records(out)[0]["trace_count"] == 1
    status, out, _ = run(capsys, "bound", "1", "--trace", "2")
    assert status == 2 and "no finite bound" in out
    assert run(capsys, "bound", "2", "--c", "3")[0] == 1
    assert run(capsys, "bound", "2", "--traces", "field")[0] == 1


def test_bound_overrides(capsys):
    status, out, _ = run(capsys, "bound", "2", "--r", "5", "--hplus", "2", "--bchar", "7",
                         "--format", "records")
    recs = records(out)
    head = recs[0]
    assert head["n"] == 4 and head["bchar"] == "7" and "7" in head["primes"]
    assert any("override" in r["text"] for r in recs if r["kind"] == "ledger")


def test_pipeline(capsys):
    status, out, _ = run(capsys, "pipeline", "5", "--traces", "rational", "--format", "records")
    head = next(r for r in records(out) if r["kind"] == "bound")
    assert status == 0
    assert (head["B_res"], head["B_total"], head["primes"], head["c1"]) == ("14400", "72000", ["2", "3", "5"], "5")
    status, out, _ = run(capsys, "pipeline", "37")
    assert status == 2 and "irregular at 32" in out
    status, out, _ = run(capsys, "pipeline", "5")
    assert status == 0 and sum(line.startswith("ledger:") for line in out.splitlines()) >= 5
    assert out.startswith(f"# freybound format {FORMAT_VERSION}")


def test_pipeline_deterministic_across_workers(capsys):
    _, one, _ = run(capsys, "pipeline", "7", "--format", "records", "--workers", "1")
    _, eight, _ = run(capsys, "pipeline", "7", "--format", "records", "--workers", "8")
    assert one == eight


def test_cache_hit_and_miss_identical(capsys, tmp_path):
    cache = tmp_path / "cache"
    args = ["pipeline", "5", "--format", "records", "--cache", str(cache)]
    _, miss, _ = run(capsys, *args)
    files = list((cache / "pipeline").glob("*.records"))
    assert len(files) == 1 and (cache / "index.tsv").exists()
    _, hit, _ = run(capsys, *args)
    assert hit == miss
    # worker count does not enter the key
    _, other, _ = run(capsys, *args, "--workers", "3")
    assert other == miss and len(list((cache / "pipeline").glob("*.records"))) == 1


def test_cache_corruption_recomputes(capsys, caplog, tmp_path):
    cache = tmp_path / "cache"
    args = ["traces", "field", "5", "2", "--format", "records", "--cache", str(cache)]
    _, good, _ = run(capsys, *args)
    path = next((cache / "traces").glob("*.records"))
    sealed = path.read_text()
    for damaged in (sealed.replace('"0"', '"7"', 1), sealed[: len(sealed) // 2], ""):
        path.write_text(damaged)
        caplog.clear()
        status, out, _ = run(capsys, *args)
        assert status == 0 and out == good
        assert "recomputing" in caplog.text
        assert path.read_text() == sealed


def test_cache_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FREYBOUND_CACHE", str(tmp_path))
    run(capsys, "regular", "37")
    assert (tmp_path / "regular" / f"{cache_key('regular', {'r': 37})}.records").exists()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freybound", "regular", "37"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "irregular at 32" in proc.stdout
