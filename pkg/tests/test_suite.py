"""Quick-mode suite behavior: reproducibility, overrides, runtime contract."""

import json
import time

import pytest

from ffintervals import reports
from ffintervals.finite_field import make_prime_field
from ffintervals.morse_galois import is_morse
from ffintervals.suite import SuiteParams, first_morse_center, run_paper_suite


@pytest.fixture(scope="module")
def quick_pair():
    t0 = time.perf_counter()
    first = run_paper_suite(SuiteParams(quick=True, seed=0, workers=1))
    elapsed = time.perf_counter() - t0
    second = run_paper_suite(SuiteParams(quick=True, seed=0, workers=1))
    return first, second, elapsed


def test_quick_suite_passes(quick_pair):
    first, _, _ = quick_pair
    assert first["pass"]
    assert len(first["checks"]) == 16


def test_quick_suite_runtime_under_a_minute(quick_pair):
    _, _, elapsed = quick_pair
    assert elapsed < 60.0


def test_same_seed_gives_identical_reports(quick_pair):
    first, second, _ = quick_pair
    a = json.dumps(reports.scrub_timings(first["reports"]), sort_keys=True)
    b = json.dumps(reports.scrub_timings(second["reports"]), sort_keys=True)
    assert a == b


def test_tolerance_file_override(tmp_path):
    # an impossible tolerance must make a sqrt(p) check fail and flip exit state
    from ffintervals.tolerances import load_tolerances

    strict = dict(load_tolerances())
    strict.pop("_meta", None)
    strict["kummer_pair"] = 0.0
    path = tmp_path / "tight.json"
    path.write_text(json.dumps(strict))
    result = run_paper_suite(
        SuiteParams(quick=True, seed=0, workers=1, tolerance_file=str(path))
    )
    failing = {c["id"] for c in result["checks"] if not c["pass"]}
    assert 3 in failing
    assert not result["pass"]


def test_first_morse_center_is_certified():
    ctx = make_prime_field(101)
    for d in (3, 4, 5):
        f = first_morse_center(ctx, d)
        ok, _ = is_morse(f)
        assert ok and f.degree == d
