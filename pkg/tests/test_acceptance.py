"""Acceptance gate: every criterion at its stated size and seed count, with
exact equality as the only pass condition.  One pass/fail line is printed
per criterion (run with ``pytest -s`` to watch them stream)."""

import time

import pytest

from qkz.suites import SuiteConfig, report_passed, run_suite

SEEDS = (1, 2, 3)


def _run(tag, cfg, budget_s=None, per_seed_budget_s=None):
    start = time.monotonic()
    report = run_suite(cfg)
    elapsed = time.monotonic() - start
    ok = report_passed(report)
    verdict = "pass" if ok else "FAIL"
    print(f"[{verdict}] {tag} ({elapsed:.1f}s, {len(report['checks'])} checks)")
    if not ok:
        failing = [c for c in report["checks"] if c["status"] != "pass"]
        pytest.fail(f"{tag}: first failure {failing[0]['name']}: "
                    f"{failing[0]['mismatch']}")
    if budget_s is not None:
        assert elapsed <= budget_s, f"{tag} exceeded {budget_s}s budget"
    if per_seed_budget_s is not None:
        seeds = len(cfg.seeds)
        assert elapsed <= per_seed_budget_s * seeds, \
            f"{tag} exceeded {per_seed_budget_s}s/seed budget"
    return report


def test_criterion_01_shakirov_eq():
    _run("1 SHAKIROV_EQ: solver equals partition sum on the 4x4 rectangle",
         SuiteConfig(suite="SHAKIROV_EQ", seeds=SEEDS, kmax=4, lmax=4),
         per_seed_budget_s=120)


def test_criterion_02_rmatrix_3way():
    _run("2 RMATRIX_3WAY: three realizations and the printed 2x2/3x3 tables",
         SuiteConfig(suite="RMATRIX_3WAY", seeds=SEEDS), budget_s=10)


def test_criterion_03_qkz_matrix():
    _run("3 QKZ_MATRIX: t-difference system through Lambda-order 3",
         SuiteConfig(suite="QKZ_MATRIX", seeds=SEEDS, lmax=4))


def test_criterion_04_al_eq_jackson():
    _run("4 AL_EQ_JACKSON: componentwise identification for m+n <= 3",
         SuiteConfig(suite="AL_EQ_JACKSON", seeds=SEEDS, lmax=3))


def test_criterion_05_commutativity():
    _run("5 COMMUTATIVITY: R D2 A = A R D2 and A = s T(R) D for N <= 4",
         SuiteConfig(suite="COMMUTATIVITY", seeds=SEEDS))


def test_criterion_06_ito_qkz():
    _run("6 ITO_QKZ: all three difference equations through order 2, N <= 3",
         SuiteConfig(suite="ITO_QKZ", seeds=SEEDS, lmax=3))


def test_criterion_07_nekrasov_3way():
    _run("7 NEKRASOV_3WAY: 200 pairs, orders 2..4, all residues",
         SuiteConfig(suite="NEKRASOV_3WAY", seeds=SEEDS), budget_s=30)


def test_criterion_08_fourd_limit():
    _run("8 FOURD_LIMIT: jets vs tridiagonal form, 4x4 table, KZ split",
         SuiteConfig(suite="FOURD_LIMIT", seeds=SEEDS, jet_order=2))


def test_criterion_09_pentagon_bailey():
    _run("9a PENTAGON: dilogarithm expansion to total order 6",
         SuiteConfig(suite="PENTAGON", seeds=SEEDS))
    _run("9b BAILEY: terminating 10W9 transformation for n <= 4",
         SuiteConfig(suite="BAILEY", seeds=SEEDS))


def test_criterion_10_shuffle():
    _run("10 SHUFFLE: factorized antisymmetrization for N <= 4",
         SuiteConfig(suite="SHUFFLE", seeds=SEEDS), budget_s=10)


def test_criterion_11_coupled():
    _run("11 COUPLED: two-step system residuals vanish to total order 4",
         SuiteConfig(suite="COUPLED", seeds=SEEDS, kmax=4, lmax=4))


def test_criterion_12_dual_qkz_heine():
    _run("12a DUAL_QKZ: Coulomb-shift equation through order 3",
         SuiteConfig(suite="DUAL_QKZ", seeds=SEEDS, lmax=3))
    _run("12b HEINE_EXAMPLE: explicit pair and its two 2x2 equations",
         SuiteConfig(suite="HEINE_EXAMPLE", seeds=SEEDS, lmax=4))
