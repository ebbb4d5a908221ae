"""Acceptance battery: one test per criterion, at full desk scale.

The suite is computed once per session (it also reruns itself at a second
worker count for the determinism criterion); each test then asserts its
criterion and prints one pass/fail line.
"""

import pytest

from ffintervals.suite import SuiteParams, run_paper_suite


@pytest.fixture(scope="module")
def suite_result():
    return run_paper_suite(SuiteParams(quick=False, seed=0, workers=1))


def _check(suite_result, cid):
    check = next(c for c in suite_result["checks"] if c["id"] == cid)
    status = "PASS" if check["pass"] else "FAIL"
    print(
        f"[{status}] criterion {cid:2d} {check['name']}: {check['observed']} "
        f"(expected {check['expected']}; tolerance {check['tolerance']}; "
        f"{check['elapsed_ms']:.0f} ms)"
    )
    assert check["pass"], f"criterion {cid} failed: {check}"


def test_criterion_01_gauss_exact_count(suite_result):
    _check(suite_result, 1)


def test_criterion_02_kummer_exact_densities(suite_result):
    _check(suite_result, 2)


def test_criterion_03_kummer_pair_independence(suite_result):
    _check(suite_result, 3)


def test_criterion_04_thm1_morse_prime_tuples(suite_result):
    _check(suite_result, 4)


def test_criterion_05_thm2_moebius_chowla_cancellation(suite_result):
    _check(suite_result, 5)


def test_criterion_06_thm5_no_cancellation_exact(suite_result):
    _check(suite_result, 6)


def test_criterion_07_sec62_independence_breakdown(suite_result):
    _check(suite_result, 7)


def test_criterion_08_bad_set_exact(suite_result):
    _check(suite_result, 8)


def test_criterion_09_divisor_titchmarsh_constants(suite_result):
    _check(suite_result, 9)


def test_criterion_10_mu_sgn_identity(suite_result):
    _check(suite_result, 10)


def test_criterion_11_oracle_equivalence(suite_result):
    _check(suite_result, 11)


def test_criterion_12_squarefree_census_bound(suite_result):
    _check(suite_result, 12)


def test_criterion_13_chebotarev_empirical(suite_result):
    _check(suite_result, 13)


def test_criterion_14_morse_genericity_scan(suite_result):
    _check(suite_result, 14)


def test_criterion_15_large_q_demo(suite_result):
    _check(suite_result, 15)


def test_criterion_16_determinism_across_workers(suite_result):
    _check(suite_result, 16)


def test_all_sixteen_criteria_present(suite_result):
    assert [c["id"] for c in suite_result["checks"]] == list(range(1, 17))
    assert suite_result["pass"] == all(c["pass"] for c in suite_result["checks"])
