import random
from fractions import Fraction

import pytest

from ffintervals.class_functions import evaluate, make_builtin
from ffintervals.errors import FieldTooSmall, OutOfRange, TooLarge
from ffintervals.finite_field import make_extension, make_prime_field
from ffintervals.interval_lab import (
    IntervalSpec,
    _stickelberger_product_sum,
    chebotarev_empirical,
    class_sum,
    correlation_sum,
    gauss_census,
    large_q_demo,
    moebius_battery,
    morse_density_scan,
    squarefree_census,
)
from ffintervals.polynomial import Poly, is_squarefree, random_monic
from ffintervals.polyparse import parse_poly

F5 = make_prime_field(5)
F7 = make_prime_field(7)
F11 = make_prime_field(11)
F13 = make_prime_field(13)


def _enumerate_sum(ctx, f, phi, shifts=None):
    """Direct per-element oracle for interval sums (no DDF kernel)."""
    shifts = shifts or [ctx(0)]
    total = Fraction(0)
    for a in range(ctx.q):
        elem = ctx.element_from_index(a)
        term = Fraction(1)
        for h in shifts:
            term *= evaluate(phi, f.shift_const(h).shift_const(elem))
        total += term
    return total


# ---------------------------------------------------------------------------
# class_sum


def test_class_sum_cusp_exact_densities():
    prime3 = make_builtin("prime", 3)
    rep = class_sum(F7, parse_poly("x^3", F7), prime3)
    assert rep.raw_sum == 4  # 2(p-1)/3 at p = 7
    assert rep.nonsquarefree_count == 1
    rep5 = class_sum(F5, parse_poly("x^3", F5), prime3)
    assert rep5.raw_sum == 0


def test_class_sum_counts_partition_the_interval():
    rng = random.Random("part")
    for _ in range(20):
        ctx = (F5, F7, F11, F13)[rng.randrange(4)]
        f = random_monic(ctx, rng.randrange(2, 5), rng)
        phi = make_builtin("moebius", f.degree)
        rep = class_sum(ctx, f, phi)
        assert sum(rep.cycle_type_counts.values()) == ctx.q
        squarefree = sum(
            n for k, n in rep.cycle_type_counts.items() if k[0] is not None
        )
        assert squarefree + rep.nonsquarefree_count == ctx.q


def test_class_sum_matches_enumeration_oracle():
    rng = random.Random("oracle")
    for _ in range(10):
        ctx = (F7, F11)[rng.randrange(2)]
        d = rng.randrange(2, 5)
        f = random_monic(ctx, d, rng)
        kind = ("prime", "moebius")[rng.randrange(2)]
        phi = make_builtin(kind, d)
        rep = class_sum(ctx, f, phi)
        assert rep.raw_sum == _enumerate_sum(ctx, f, phi)


def test_class_sum_requires_matching_degree():
    from ffintervals.errors import DegreeMismatch

    with pytest.raises(DegreeMismatch):
        class_sum(F7, parse_poly("x^3", F7), make_builtin("prime", 4))


def test_class_sum_worker_determinism():
    from ffintervals import reports

    F101 = make_prime_field(101)
    f = parse_poly("x^4+x", F101)
    phi = make_builtin("prime", 4)
    blobs = []
    for workers in (1, 2, 8):
        rep = class_sum(F101, f, phi, workers=workers)
        blobs.append(
            reports.to_json(reports.scrub_timings(reports.experiment_to_dict(rep)))
        )
    assert blobs[0] == blobs[1] == blobs[2]


def test_class_sum_constant_kind_labels():
    rep = class_sum(F13, parse_poly("x^3+x", F13), make_builtin("prime", 3))
    assert rep.constant_kind == "generic"
    rep2 = class_sum(F13, parse_poly("x^3", F13), make_builtin("prime", 3))
    assert rep2.constant_kind == "non-generic"
    assert rep2.empirical_constant == rep2.raw_sum / Fraction(13)


# ---------------------------------------------------------------------------
# correlation_sum


def test_correlation_k1_equals_class_sum():
    f = parse_poly("x^3+2*x", F11)
    phi = make_builtin("prime", 3)
    single = class_sum(F11, f, phi)
    spec = IntervalSpec(F11, f, (F11(0),), (phi,))
    joint = correlation_sum(spec)
    assert joint.raw_sum == single.raw_sum
    assert joint.nonsquarefree_count == single.nonsquarefree_count


def test_correlation_matches_enumeration_oracle():
    rng = random.Random("corr")
    for _ in range(6):
        ctx = F11
        d = rng.randrange(2, 4)
        f = random_monic(ctx, d, rng)
        phi = make_builtin("moebius", d)
        h2 = ctx(rng.randrange(1, 11))
        spec = IntervalSpec(ctx, f, (ctx(0), h2), (phi, phi))
        rep = correlation_sum(spec)
        total = Fraction(0)
        for a in range(ctx.q):
            elem = ctx.element_from_index(a)
            total += evaluate(phi, f.shift_const(elem)) * evaluate(
                phi, f.shift_const(h2).shift_const(elem)
            )
        assert rep.raw_sum == total


def test_correlation_rejects_duplicate_shifts():
    phi = make_builtin("prime", 3)
    with pytest.raises(OutOfRange):
        IntervalSpec(F11, parse_poly("x^3", F11), (F11(1), F11(1)), (phi, phi))


def test_correlation_bad_shift_note_and_single_constants():
    f = parse_poly("x^4-2*x^2", F13)
    phi = make_builtin("prime", 4)
    spec_bad = IntervalSpec(F13, f, (F13(0), F13(1)), (phi, phi))
    rep_bad = correlation_sum(spec_bad)
    assert rep_bad.notes["bad_shifts"] is True
    assert rep_bad.constant_kind == "non-generic"
    spec_good = IntervalSpec(F13, f, (F13(0), F13(3)), (phi, phi))
    rep_good = correlation_sum(spec_good, single_constants=(Fraction(1, 4), Fraction(1, 4)))
    assert rep_good.notes["bad_shifts"] is False
    assert rep_good.constant_kind == "product-of-singles"
    assert rep_good.predicted_constant == Fraction(1, 16)


def test_thm4_product_law_non_morse_good_shifts():
    # product of single-interval empirical constants predicts the pair sum
    from ffintervals.morse_galois import bad_shift_check, make_non_morse
    from ffintervals.tolerances import load_tolerances

    tol = load_tolerances()["thm4_product"]
    p = 1009
    ctx = make_prime_field(p)
    rng = random.Random("0/thm4")  # the calibrated stream
    for _ in range(20):
        d = rng.choice((3, 4, 5))
        f = make_non_morse(ctx, d, rng)
        while True:
            h1, h2 = rng.randrange(p), rng.randrange(p)
            if h1 != h2 and not bad_shift_check(f, (ctx(h1), ctx(h2))):
                break
        phi = make_builtin("prime", d)
        c = class_sum(ctx, f, phi).empirical_constant
        rep = correlation_sum(
            IntervalSpec(ctx, f, (ctx(h1), ctx(h2)), (phi, phi)),
            single_constants=(c, c),
        )
        assert abs(float(rep.raw_sum - c * c * p)) <= tol * p**0.5


# ---------------------------------------------------------------------------
# Chebotarev statistics


def test_chebotarev_kummer_case():
    # x -> x^3 permutes F_11, so every squarefree member has exactly one root
    rep = chebotarev_empirical(F11, parse_poly("x^3", F11), (F11(0),))
    assert rep.frequencies == {((2, 1),): Fraction(1)}
    assert sum(rep.frequencies.values()) == 1


def test_chebotarev_frequencies_sum_to_one():
    rng = random.Random("cheb")
    for _ in range(10):
        f = random_monic(F13, rng.randrange(2, 5), rng)
        rep = chebotarev_empirical(F13, f, (F13(0),))
        assert sum(rep.frequencies.values()) == 1
        assert rep.squarefree_total + rep.nonsquarefree_count == 13


def test_chebotarev_morse_uniformity_at_scale():
    F1009 = make_prime_field(1009)
    from ffintervals.suite import first_morse_center

    f = first_morse_center(F1009, 3)
    rep = chebotarev_empirical(F1009, f, (F1009(0),))
    assert len(rep.predicted) == 3
    assert rep.max_deviation <= 2.0 / 1009**0.5


# ---------------------------------------------------------------------------
# censuses


def test_squarefree_census_known_cases():
    rep = squarefree_census(F7, parse_poly("x^2", F7), (F7(0),))
    assert rep.bad_count == 1 and rep.bad_a[0].raw == 0
    rep3 = squarefree_census(F7, parse_poly("x^3", F7), (F7(0),))
    assert rep3.bad_count == 1


def test_squarefree_census_matches_direct_sweep():
    rng = random.Random("census")
    for _ in range(30):
        ctx = (F7, F11, F13)[rng.randrange(3)]
        d = rng.randrange(2, min(6, ctx.p))
        f = random_monic(ctx, d, rng)
        k = rng.randrange(1, 4)
        shift_vals = rng.sample(range(ctx.p), k)
        shifts = tuple(ctx(v) for v in shift_vals)
        rep = squarefree_census(ctx, f, shifts)
        direct = 0
        for a in range(ctx.q):
            elem = ctx.element_from_index(a)
            if all(
                is_squarefree(f.shift_const(h).shift_const(elem)) for h in shifts
            ):
                direct += 1
        assert rep.all_squarefree_count == direct
        assert rep.bad_count <= rep.bad_bound


def test_squarefree_census_field_too_small():
    F3 = make_prime_field(3)
    with pytest.raises(FieldTooSmall):
        squarefree_census(F3, parse_poly("x^4+x", F3), (F3(0),))


def test_gauss_census_values_and_guard():
    assert gauss_census(2, 2) == (1, 1)
    assert gauss_census(3, 3) == (8, 8)
    for p in (2, 3, 5, 7):
        for d in (2, 3, 4):
            enumerated, formula = gauss_census(p, d)
            assert enumerated == formula
    with pytest.raises(TooLarge):
        gauss_census(1009, 4)


# ---------------------------------------------------------------------------
# Morse scan


def test_morse_scan_cusp_over_f13():
    rep = morse_density_scan(F13, parse_poly("x^3", F13))
    assert rep.bad_count == 1
    assert rep.bad_s[0].raw == 0
    assert rep.warnings == ()


def test_morse_scan_hypothesis_warnings():
    F3 = make_prime_field(3)
    rep = morse_density_scan(F3, parse_poly("x^3+x+1", F3))  # p | 2d
    assert any("gcd" in w for w in rep.warnings)
    rep2 = morse_density_scan(F5, parse_poly("x^5+x^2", F5))  # f'' = 2 * ... check
    # x^5 + x^2: f' = x, f'' = 1 over F_5? compute: d/dx(5x^4 + 2x) = 2 != 0
    assert isinstance(rep2.warnings, tuple)


def test_morse_scan_counts_match_direct_is_morse():
    from ffintervals.morse_galois import is_morse

    f = parse_poly("x^4+2*x^2+x", F13)
    rep = morse_density_scan(F13, f)
    x = Poly.x(F13)
    direct = []
    for s in range(13):
        ok, _ = is_morse(f + Poly(F13, [0, s]))
        if not ok:
            direct.append(s)
    assert [e.raw for e in rep.bad_s] == direct


# ---------------------------------------------------------------------------
# Möbius battery and the demo


def test_moebius_battery_no_cancellation_branch():
    bat = moebius_battery(F13, parse_poly("x^3", F13), (F13(0), F13(1)), tolerance_c=3.0)
    assert bat.branch == "no-cancellation"
    assert bat.single.raw_sum == -12
    assert abs(bat.chowla.raw_sum) >= 13 - 3
    assert bat.verdict.kind == "no-cancellation"


def test_moebius_battery_cancellation_branch():
    F101 = make_prime_field(101)
    from ffintervals.suite import first_morse_center

    f = first_morse_center(F101, 3)
    bat = moebius_battery(F101, f, (F101(0), F101(1)), tolerance_c=5.0)
    assert bat.branch == "cancellation"
    assert bat.verdict.kind == "square-root-cancellation"


def test_stickelberger_product_matches_ddf_route():
    # the fast parity kernel must agree with the evaluate()-based product
    for p, l in ((5, 2), (13, 1)):
        ctx = make_extension(make_prime_field(p), l, 0) if l > 1 else make_prime_field(p)
        rng = random.Random(f"prod/{p}/{l}")
        f = random_monic(ctx, 3, rng)
        shift_idx = rng.sample(range(ctx.q), 3)
        shifts = tuple(ctx.element_from_index(i) for i in shift_idx)
        total, zeros, plus, minus = _stickelberger_product_sum(ctx, f, shifts)
        mu = make_builtin("moebius", 3)
        oracle = Fraction(0)
        zero_count = 0
        for a in range(ctx.q):
            elem = ctx.element_from_index(a)
            term = Fraction(1)
            for h in shifts:
                term *= evaluate(mu, f.shift_const(h).shift_const(elem))
            if term == 0:
                zero_count += 1
            oracle += term
        assert total == oracle
        assert zeros == zero_count
        assert plus - minus == total


def test_large_q_demo_multiset_structure_and_dichotomy_failure():
    demo = large_q_demo(5, (1, 2, 4), seed=0)
    for step in demo.steps:
        assert step.multiset_multiplicity_two
    q625 = demo.steps[-1]
    assert q625.q == 625
    # single sums cancel at sqrt scale while the product fills the interval
    assert abs(q625.single_report.raw_sum) <= 4 * 25
    assert abs(q625.product_sum) >= 625 / 2
    assert abs(q625.product_sum) >= 312  # frozen demo magnitude
    # constant sign: every nonzero product has the same sign
    assert q625.product_plus == 0 or q625.product_minus == 0


def test_large_q_demo_guards():
    with pytest.raises(OutOfRange):
        large_q_demo(4, (1,))
    with pytest.raises(TooLarge):
        large_q_demo(5, (12,))
