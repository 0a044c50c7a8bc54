import csv
import json

import pytest

from bergman_lab import cli, verification


def run(tmp_path, task, cfg, name="out"):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / name
    return cli.main([task, "--config", str(path), "--out", str(out)]), out


def test_kernel_eval(tmp_path):
    code, out = run(tmp_path, "kernel-eval", {"weight": {"alpha": 0.0}, "points": [[[0.5, 0.0], [0.3, 0.0]]]})
    assert code == 0
    rows = list(csv.DictReader(open(out / "kernel_eval.csv")))
    assert float(rows[0]["K_re"]) == pytest.approx(1 / (3.141592653589793 * 0.85**2), rel=1e-12)
    report = json.loads((out / "report.json").read_text())
    assert report[0]["pass"] is True


def test_deterministic(tmp_path):
    cfg = {"norm": {"m": 2, "s": 0.6, "variants": ["a", "d"]}, "numeric": {"decades": 3}}
    _, a = run(tmp_path, "sobolev-table", cfg, "a")
    _, b = run(tmp_path, "sobolev-table", cfg, "b")
    for f in ("sobolev_table.csv", "report.json"):
        assert (a / f).read_bytes() == (b / f).read_bytes()


def test_continuation_scan(tmp_path):
    code, out = run(tmp_path, "continuation-scan", {"s_values": [[0.5, 0.0], [0.2, 1.0]],
                                                   "numeric": {"n_nodes": 100}})
    assert code == 0
    assert len(list(csv.reader(open(out / "continuation_scan.csv")))) == 3


@pytest.mark.parametrize("cfg", [{"bogus": 1}, {"weight": {"alpha": 0.0, "beta": 1}}, {"weight": 3}])
def test_unknown_keys(tmp_path, cfg):
    assert run(tmp_path, "kernel-eval", cfg)[0] == 2


def test_task_mismatch(tmp_path):
    assert run(tmp_path, "kernel-eval", {"task": "sobolev-table"})[0] == 2


def test_computation_error(tmp_path):
    code, _ = run(tmp_path, "kernel-eval", {"points": [[[1.0, 0.0], [1.0, 0.0]]]})
    assert code == 1


def test_failed_check_exit(tmp_path, monkeypatch):
    bad = verification.Check("x", "forced", 1.0, 2.0, 0.1, False)
    monkeypatch.setitem(verification.CRITERIA, 99, ("forced failure", lambda: [bad]))
    code, out = run(tmp_path, "verify-all", {"criteria": [99]})
    assert code == 3
    assert json.loads((out / "report.json").read_text())[0]["pass"] is False


def test_verify_subset(tmp_path, capsys):
    code, _ = run(tmp_path, "verify-all", {"criteria": [6, 14]})
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("[PASS] criterion 6")
