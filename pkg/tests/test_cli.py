import copy
import json

import pytest

from qkz.cli import main
from qkz.errors import ConfigError
from qkz.suites import SuiteConfig, run_suite, write_report


def test_unknown_suite_is_rejected_before_computation():
    with pytest.raises(ConfigError):
        SuiteConfig(suite="NO_SUCH_SUITE")
    assert main(["verify", "NO_SUCH_SUITE"]) == 2


def test_verify_exit_code_and_report_schema(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "PENTAGON", "--seed", "3", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert set(report) == {"suite", "version", "config", "checks"}
    assert report["suite"] == "PENTAGON"
    for check in report["checks"]:
        assert {"name", "status", "point", "orders", "mismatch", "time_ms"} <= set(check)
        assert check["status"] in ("pass", "fail")


def test_report_determinism_modulo_timing():
    cfg = SuiteConfig(suite="BAILEY", seeds=(2,))
    rep1 = run_suite(cfg)
    rep2 = run_suite(SuiteConfig(suite="BAILEY", seeds=(2,)))
    strip = lambda rep: json.dumps(  # noqa: E731
        {**rep, "checks": [{k: v for k, v in c.items() if k != "time_ms"}
                           for c in rep["checks"]]}, sort_keys=True)
    assert strip(rep1) == strip(rep2)


def test_csv_report_format():
    cfg = SuiteConfig(suite="SHUFFLE", seeds=(1,), format="csv")
    rep = run_suite(cfg)
    text = write_report(rep, None, "csv")
    lines = text.strip().splitlines()
    assert lines[0] == "name,status,point,orders,mismatch,time_ms"
    assert len(lines) == 1 + len(rep["checks"])


def test_failure_reports_first_mismatch_location():
    # inject a fake failing comparison through the report writer contract
    rep = run_suite(SuiteConfig(suite="SHUFFLE", seeds=(1,)))
    rep = copy.deepcopy(rep)
    rep["checks"][0]["status"] = "fail"
    rep["checks"][0]["mismatch"] = {"N": 2, "k": 1, "factored": "3/5",
                                    "antisymmetrized": "2/5"}
    text = write_report(rep, None, "json")
    obj = json.loads(text)
    assert obj["checks"][0]["mismatch"]["factored"] == "3/5"


def test_solve_and_laumon_dumps(tmp_path):
    out = tmp_path / "series.csv"
    assert main(["solve", "--kmax", "2", "--lmax", "2", "--seed", "1",
                 "--out", str(out)]) == 0
    solver_lines = out.read_text().strip().splitlines()
    assert solver_lines[0] == "k,l,numerator,denominator"
    assert main(["laumon", "--kmax", "2", "--lmax", "2", "--seed", "1",
                 "--out", str(out)]) == 0
    laumon_lines = out.read_text().strip().splitlines()
    # the two dumps agree coefficient by coefficient
    assert solver_lines == laumon_lines


def test_rmatrix_dump(tmp_path):
    out = tmp_path / "rmatrix.json"
    assert main(["rmatrix", "--m", "1", "--n", "0", "--seed", "3",
                 "--lambda", "3/11", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert len(obj["rows"]) == 2
    assert main(["rmatrix", "--m", "1", "--n", "1", "--seed", "3", "--fourd",
                 "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["kind"] == "small-h first order"


def test_degenerate_point_retry_is_deterministic():
    from qkz.errors import DegenerateParameterError
    from qkz.suites import RETRY_STRIDE, _sample_with_retries

    seen = []

    def attempt(p):
        seen.append(p)
        if len(seen) < 3:
            raise DegenerateParameterError("synthetic degeneracy")
        return "ok"

    p, result = _sample_with_retries(10, 6, attempt_fn=attempt)
    assert result == "ok" and len(seen) == 3
    # the third sampled point is the one derived from seed + 2*stride
    from qkz.scalars import sample_generic_point
    assert p == sample_generic_point(10 + 2 * RETRY_STRIDE, 6)


def test_worker_pool_cap(monkeypatch):
    from qkz.suites import worker_count
    monkeypatch.setenv("QKZ_THREADS", "2")
    assert worker_count(8) == 2
    assert worker_count(1) == 1
    monkeypatch.delenv("QKZ_THREADS")
    assert worker_count(3) <= 3


def test_parallel_report_matches_serial(monkeypatch):
    monkeypatch.setenv("QKZ_THREADS", "1")
    serial = run_suite(SuiteConfig(suite="COMMUTATIVITY", seeds=(4,)))
    monkeypatch.setenv("QKZ_THREADS", "3")
    parallel = run_suite(SuiteConfig(suite="COMMUTATIVITY", seeds=(4,)))
    strip = lambda rep: [  # noqa: E731
        {k: v for k, v in c.items() if k != "time_ms"} for c in rep["checks"]]
    assert strip(serial) == strip(parallel)


def test_jackson_dump(tmp_path):
    out = tmp_path / "jackson.json"
    assert main(["jackson", "--m", "1", "--n", "0", "--lmax", "2", "--seed", "4",
                 "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert set(obj["components"]) == {"0", "1"}
    for rs in obj["equation_residuals"].values():
        for series in rs:
            assert all(c == "0" for c in series)
