import json
import re

import pytest

from regver.cli import main
from regver.homology import complex_to_json, cubical_to_json, two_term_complex
from regver.randomized import interval_cubical


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factorial_lemma_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "factorial-lemma", "--max-p", "10")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["schema_version"] == 1
    assert payload["reports"][0]["stats"]["pairs"] == 66


def test_expand_tm_latex(capsys):
    code, out, _ = run_cli(capsys, "expand", "tm", "--m", "1",
                           "--format", "latex")
    assert code == 0
    assert out.strip() == "u_{1}"


def test_expand_wm_json(capsys):
    code, out, _ = run_cli(capsys, "expand", "wm", "--m", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["family"] == "wm"
    assert payload["term_count"] == 4
    symbols = {f["symbol"] for t in payload["expression"]
               for f in t["factors"]}
    assert symbols == {"y1/x1", "y2/x2"}


def test_expand_mnm(capsys):
    code, out, _ = run_cli(capsys, "expand", "mnm", "--n", "1", "--m", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["params"] == {"n": 1, "m": 1}


def test_usage_error_for_m_zero(capsys):
    code, _, err = run_cli(capsys, "verify", "tm-identity", "--m", "0")
    assert code == 2
    assert "--m" in err


def test_usage_error_for_unknown_suite(capsys):
    code, _, _ = run_cli(capsys, "verify", "nonsense", "--m", "1")
    assert code == 2


def test_takeda_all_indices(capsys):
    code, out, _ = run_cli(capsys, "verify", "takeda", "--m", "3")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["reports"]) == 3


def test_fault_injection_flips_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "goncharov-wang", "--m", "3",
                           "--perturb-cjm")
    assert code == 1
    payload = json.loads(out)
    assert payload["status"] == "fail"
    ce = payload["reports"][0]["counterexample"]
    assert ce is not None and ce["difference_term_count"] > 0


def test_reports_deterministic_modulo_timing(capsys):
    argv = ["verify", "recursion", "--m", "3"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    scrub = lambda s: re.sub(r'"elapsed": [0-9.e-]+', '"elapsed": 0', s)
    assert scrub(out1) == scrub(out2)


def test_homology_command(tmp_path, capsys):
    path = tmp_path / "cx.json"
    path.write_text(json.dumps(complex_to_json(two_term_complex(1, [[2]]))))
    code, out, _ = run_cli(capsys, "homology", "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["homology"]["0"] == {"betti": 0, "torsion": [2]}
    assert payload["homology"]["1"] == {"betti": 0, "torsion": []}

    code, out, _ = run_cli(capsys, "homology", "--input", str(path),
                           "--degree", "0")
    payload = json.loads(out)
    assert list(payload["homology"]) == ["0"]


def test_homology_of_cubical_file(tmp_path, capsys):
    path = tmp_path / "cub.json"
    path.write_text(json.dumps(cubical_to_json(interval_cubical(2))))
    code, out, _ = run_cli(capsys, "homology", "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "cubical"
    # the interval is contractible
    assert payload["homology"]["0"] == {"betti": 1, "torsion": []}
    assert payload["homology"]["1"] == {"betti": 0, "torsion": []}


def test_complex_check(tmp_path, capsys):
    path = tmp_path / "cx.json"
    path.write_text(json.dumps(complex_to_json(two_term_complex(1, [[2]]))))
    code, out, _ = run_cli(capsys, "complex", "check", "--input", str(path))
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_malformed_complex_file_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"degrees": [0, 1], "ranks": {"0": 1, "1": 1}')
    code, _, err = run_cli(capsys, "complex", "check", "--input", str(path))
    assert code == 2
    assert "line" in err

    path.write_text(json.dumps({"degrees": [0, 1], "ranks": {"0": 1, "1": 1},
                                "differentials": {"1": [[1, 1]]}}))
    code, _, err = run_cli(capsys, "complex", "check", "--input", str(path))
    assert code == 2
    assert "differentials.1" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "verify", "vanishing", "--m", "2",
                           "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["status"] == "pass"


def test_failing_report_requires_counterexample():
    from regver.report import Report
    with pytest.raises(ValueError):
        Report(suite="x", params={}, status="fail")
    with pytest.raises(ValueError):
        Report(suite="x", params={}, status="maybe")


def test_threads_env_override(capsys, monkeypatch):
    monkeypatch.setenv("REGVER_THREADS", "2")
    code, out, _ = run_cli(capsys, "verify", "binomial", "--max-n", "5")
    assert code == 0
    monkeypatch.setenv("REGVER_THREADS", "zero")
    from regver.cli import UsageError, worker_count
    with pytest.raises(UsageError):
        worker_count()
