import json
import subprocess
import sys

import pytest

from lieroots.cli import main, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_roots_positive(capsys):
    code, out = run(capsys, "roots", "A", "2", "--positive")
    assert code == 0 and len(out.out.strip().splitlines()) == 3


def test_roots_json(capsys):
    code, out = run(capsys, "roots", "G2", "2", "--json")
    data = json.loads(out.out)
    assert code == 0 and len(data) == 12 and all("coords" in d and "simple" in d for d in data)


@pytest.mark.parametrize("argv", [["roots", "A", "0"], ["roots", "Q", "3"], ["codim", "D", "2"],
                                  ["verify", "tables", "--max-rank", "4"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_dynkin(capsys):
    code, out = run(capsys, "dynkin", "B", "3")
    assert code == 0 and out.out.strip()
    code, out = run(capsys, "dynkin", "E6", "6", "--dot")
    assert out.out.count("--") == 5


def test_codim_json(capsys):
    code, out = run(capsys, "codim", "C", "3", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["v"] == min(data["rbar"]) and len(data["rbar"]) == 3


def test_classify_small(capsys):
    code, out = run(capsys, "classify", "A", "2", "--json")
    assert code == 0 and all(d["verdict"] != "violation" for d in json.loads(out.out))


def test_classify_budget(capsys):
    code, out = run(capsys, "classify", "B", "4", "--budget", "10")
    assert code == 3 and "budget" in out.err


def test_verify_budget_skips(capsys):
    code, out = run(capsys, "verify", "classify", "--max-rank", "5", "--budget", "100", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["summary"]["skipped-budget"] > 0 and data["summary"]["fail"] == 0


def test_verify_out_and_timings(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _ = run(capsys, "verify", "weyl", "--max-rank", "5", "--out", str(path), "--timings")
    data = json.loads(path.read_text())
    assert code == 0 and data["suite"] == "weyl" and data["wall_time"] >= 0
    code, _ = run(capsys, "verify", "weyl", "--max-rank", "5", "--out", str(path))
    assert "wall_time" not in json.loads(path.read_text())


def test_verify_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "induction", "--max-rank", "5", "--out", str(a))
    run(capsys, "verify", "induction", "--max-rank", "5", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_missing_fixture_dir_is_fine_broken_json_is_not(tmp_path, capsys):
    code, _ = run(capsys, "verify", "weyl", "--max-rank", "5", "--fixtures", str(tmp_path))
    assert code == 0
    (tmp_path / "weyl_table.json").write_text("{not json")
    code, out = run(capsys, "verify", "weyl", "--max-rank", "5", "--fixtures", str(tmp_path))
    assert code == 2 and "fixtures" in out.err


def test_run_suite_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lieroots", "roots", "A", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 2
