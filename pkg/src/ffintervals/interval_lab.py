"""Exact experiments over very short intervals {f + a : a in F_q}.

The sweep kernels walk the interval in canonical index order, compute the
cycle type of every (shifted) member by distinct-degree factorization, and
reduce per-block counts by plain addition, so reports are identical for any
worker count.  All sums are exact rationals; floats appear only in the
normalized error and timing fields.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .class_functions import ClassFunction, CycleType, make_builtin, mean_constant
from .errors import (
    DegreeMismatch,
    DichotomyViolation,
    FieldTooSmall,
    NoSuitableS,
    OutOfRange,
    TooLarge,
)
from .finite_field import FieldCtx, FieldElement, make_extension, make_prime_field
from .morse_galois import (
    bad_shift_check,
    classify_mu_cancellation,
    critical_data,
    is_morse,
)
from .polynomial import (
    Poly,
    _pattern_or_none_generic,
    _pattern_or_none_int,
    derivative,
    disc_in_t,
    roots_in_field,
)

_GAUSS_GUARD = 10**7
_SCAN_GUARD = 10**6


# ---------------------------------------------------------------------------
# sweep kernels


def _sweep_block(p, l, modulus, f_raws, shift_raws, lo, hi):
    """Joint cycle-type counts over a in [lo, hi); None marks non-squarefree."""
    counts = {}
    if l == 1:
        q = p
        qbits = [int(b) for b in bin(q)[2:]]
        f_c = list(f_raws)
        bases = [(f_c[0] + h) % p for h in shift_raws]
        for a in range(lo, hi):
            key = []
            for b in bases:
                g = list(f_c)
                g[0] = (b + a) % p
                key.append(_pattern_or_none_int(p, g, qbits))
            key = tuple(key)
            counts[key] = counts.get(key, 0) + 1
        return counts
    ctx = FieldCtx(p, l, modulus)
    f_c = list(f_raws)
    bases = [ctx.add(f_c[0], h) for h in shift_raws]
    for idx in range(lo, hi):
        a = ctx.raw_from_index(idx)
        key = []
        for b in bases:
            g = list(f_c)
            g[0] = ctx.add(b, a)
            key.append(_pattern_or_none_generic(ctx, g))
        key = tuple(key)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _sweep_block_task(payload):
    return _sweep_block(*payload)


def _joint_counts(ctx, f: Poly, shifts, workers: int = 1):
    """Aggregate joint cycle-type counts over the whole interval."""
    shift_raws = tuple(h.raw for h in shifts)
    q = ctx.q
    if workers <= 1:
        return _sweep_block(ctx.p, ctx.l, ctx.modulus, f.raw_coeffs, shift_raws, 0, q)
    bounds = [q * i // workers for i in range(workers + 1)]
    payloads = [
        (ctx.p, ctx.l, ctx.modulus, f.raw_coeffs, shift_raws, bounds[i], bounds[i + 1])
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    totals = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for counts in pool.map(_sweep_block_task, payloads):
            for key, n in counts.items():
                totals[key] = totals.get(key, 0) + n
    return totals


# ---------------------------------------------------------------------------
# report types


@dataclass(frozen=True)
class IntervalSpec:
    """One interval experiment: f, distinct shifts, one class function each."""

    ctx: FieldCtx
    f: Poly
    shifts: tuple
    phis: tuple

    def __post_init__(self):
        if self.f.degree < 2 or not self.f.is_monic:
            raise OutOfRange("interval center must be monic of degree >= 2")
        if len(self.shifts) != len(self.phis) or not self.shifts:
            raise OutOfRange("need equally many shifts and class functions")
        if len({h.raw for h in self.shifts}) != len(self.shifts):
            raise OutOfRange("shifts must be distinct")
        for phi in self.phis:
            if phi.d != self.f.degree:
                raise DegreeMismatch(f"phi on S_{phi.d} vs deg(f) = {self.f.degree}")


@dataclass
class ExperimentReport:
    """Raw and predicted sums for one interval experiment."""

    kind: str
    params: dict
    raw_sum: Fraction
    predicted_constant: Fraction
    constant_kind: str
    empirical_constant: Fraction
    main_term: Fraction
    abs_error: Fraction
    normalized_error: float
    cycle_type_counts: dict
    nonsquarefree_count: int
    elapsed: float = 0.0
    worker_count: int = 1
    notes: dict = field(default_factory=dict)


def _params_dict(ctx, f, shifts=None, phis=None):
    from .polyparse import format_poly

    out = {"p": ctx.p, "l": ctx.l, "q": str(ctx.q), "f": format_poly(f)}
    if shifts is not None:
        out["shifts"] = [repr(h) for h in shifts]
    if phis is not None:
        out["phis"] = [phi.name for phi in phis]
    return out


def _finish_report(kind, params, counts, phis, defaults, q, predicted, constant_kind,
                   elapsed, workers, notes=None):
    raw_sum = Fraction(0)
    nonsf = 0
    for key, n in counts.items():
        if any(comp is None for comp in key):
            nonsf += n
        term = Fraction(1)
        for comp, phi, default in zip(key, phis, defaults):
            term *= default if comp is None else phi.table[CycleType(comp)]
        raw_sum += term * n
    main = predicted * q
    abs_err = abs(raw_sum - main)
    return ExperimentReport(
        kind=kind,
        params=params,
        raw_sum=raw_sum,
        predicted_constant=predicted,
        constant_kind=constant_kind,
        empirical_constant=raw_sum / q,
        main_term=main,
        abs_error=abs_err,
        normalized_error=float(abs_err) / math.sqrt(q),
        cycle_type_counts=counts,
        nonsquarefree_count=nonsf,
        elapsed=elapsed,
        worker_count=workers,
        notes=notes or {},
    )


def class_sum(ctx: FieldCtx, f: Poly, phi: ClassFunction, workers: int = 1) -> ExperimentReport:
    """Exact sum of phi over the interval {f + a : a in F_q}.

    The prediction is the S_d mean constant; for non-Morse f it is labeled
    non-generic and the exact empirical constant (raw_sum / q) is reported
    alongside.
    """
    t0 = time.perf_counter()
    spec = IntervalSpec(ctx, f, (ctx(0),), (phi,))
    counts = _joint_counts(ctx, f, spec.shifts, workers)
    counts = {key[0:1]: n for key, n in counts.items()}
    morse, _ = is_morse(f)
    report = _finish_report(
        "class_sum",
        _params_dict(ctx, f, phis=(phi,)),
        counts,
        (phi,),
        (phi.default_nonsquarefree,),
        ctx.q,
        mean_constant(phi),
        "generic" if morse else "non-generic",
        time.perf_counter() - t0,
        workers,
    )
    return report


def correlation_sum(spec: IntervalSpec, workers: int = 1, single_constants=None) -> ExperimentReport:
    """Exact sum of prod_i phi_i(f + h_i + a) over the interval.

    The generic prediction is the product of mean constants (valid for Morse
    f).  For non-Morse f whose shift differences avoid B(f), supplying the
    single-shift empirical constants switches the prediction to their product.
    """
    t0 = time.perf_counter()
    ctx = spec.ctx
    counts = _joint_counts(ctx, spec.f, spec.shifts, workers)
    morse, _ = is_morse(spec.f)
    notes = {}
    if morse:
        predicted = math.prod((mean_constant(phi) for phi in spec.phis), start=Fraction(1))
        constant_kind = "generic"
    else:
        bad = bad_shift_check(spec.f, spec.shifts) if len(spec.shifts) > 1 else False
        notes["bad_shifts"] = bad
        if not bad and single_constants is not None:
            predicted = math.prod(
                (Fraction(c) for c in single_constants), start=Fraction(1)
            )
            constant_kind = "product-of-singles"
        else:
            predicted = math.prod(
                (mean_constant(phi) for phi in spec.phis), start=Fraction(1)
            )
            constant_kind = "non-generic"
    return _finish_report(
        "correlation_sum",
        _params_dict(ctx, spec.f, spec.shifts, spec.phis),
        counts,
        spec.phis,
        tuple(phi.default_nonsquarefree for phi in spec.phis),
        ctx.q,
        predicted,
        constant_kind,
        time.perf_counter() - t0,
        workers,
        notes,
    )


# ---------------------------------------------------------------------------
# Chebotarev statistics


@dataclass
class ChebotarevReport:
    params: dict
    counts: dict
    squarefree_total: int
    nonsquarefree_count: int
    frequencies: dict  # key -> Fraction
    predicted: dict  # key -> Fraction (uniform S_d product)
    max_deviation: float
    tv_distance: float
    elapsed: float = 0.0
    worker_count: int = 1


def chebotarev_empirical(ctx, f, shifts, workers: int = 1) -> ChebotarevReport:
    """Joint cycle-type frequencies versus the uniform S_d product prediction."""
    t0 = time.perf_counter()
    shifts = tuple(h if isinstance(h, FieldElement) else ctx(h) for h in shifts)
    mu = make_builtin("moebius", f.degree)
    spec = IntervalSpec(ctx, f, shifts, (mu,) * len(shifts))
    counts = _joint_counts(ctx, f, spec.shifts, workers)
    clean = {k: n for k, n in counts.items() if all(c is not None for c in k)}
    total = sum(clean.values())
    nonsf = ctx.q - total
    freqs = {k: Fraction(n, total) for k, n in clean.items()}
    from .class_functions import partitions_of

    cts = partitions_of(f.degree)
    predicted = {}

    def rec(prefix, weight):
        if len(prefix) == len(shifts):
            predicted[tuple(prefix)] = weight
            return
        for ct in cts:
            rec(prefix + [ct.parts], weight / ct.centralizer_order())

    rec([], Fraction(1))
    devs = {
        k: float(abs(freqs.get(k, Fraction(0)) - w)) for k, w in predicted.items()
    }
    tv = sum(abs(freqs.get(k, Fraction(0)) - w) for k, w in predicted.items())
    tv += sum(v for k, v in freqs.items() if k not in predicted)
    return ChebotarevReport(
        params=_params_dict(ctx, f, shifts),
        counts=counts,
        squarefree_total=total,
        nonsquarefree_count=nonsf,
        frequencies=freqs,
        predicted=predicted,
        max_deviation=max(devs.values()) if devs else 0.0,
        tv_distance=float(tv) / 2.0,
        elapsed=time.perf_counter() - t0,
        worker_count=workers,
    )


# ---------------------------------------------------------------------------
# censuses


@dataclass
class CensusReport:
    params: dict
    q: int
    all_squarefree_count: int
    bad_count: int
    bad_bound: int
    bad_a: tuple
    elapsed: float = 0.0


def squarefree_census(ctx, f, shifts) -> CensusReport:
    """Count a for which every f + h_i + a is squarefree, exactly.

    Non-squarefree members correspond to roots of D(t) = disc(f + t) shifted
    by each h_i, so the census needs no sweep; the complement is at most
    k * (d - 1).
    """
    t0 = time.perf_counter()
    shifts = tuple(h if isinstance(h, FieldElement) else ctx(h) for h in shifts)
    if f.degree < 2 or not f.is_monic:
        raise OutOfRange("census needs a monic polynomial of degree >= 2")
    if ctx.p <= f.degree:
        raise FieldTooSmall("census assumes p > deg(f)")
    if len({h.raw for h in shifts}) != len(shifts):
        raise OutOfRange("shifts must be distinct")
    dpoly = disc_in_t(f)
    roots = roots_in_field(dpoly) if dpoly.degree >= 1 else []
    bad = set()
    for h in shifts:
        for rho in roots:
            bad.add(ctx.sub(rho.raw, h.raw))
    bad_sorted = tuple(
        FieldElement(ctx, r) for r in sorted(bad, key=ctx.index_of)
    )
    k, d = len(shifts), f.degree
    return CensusReport(
        params=_params_dict(ctx, f, shifts),
        q=ctx.q,
        all_squarefree_count=ctx.q - len(bad),
        bad_count=len(bad),
        bad_bound=k * (d - 1),
        bad_a=bad_sorted,
        elapsed=time.perf_counter() - t0,
    )


def _int_mobius(n: int) -> int:
    out = 1
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            out = -out
        f += 1
    if m > 1:
        out = -out
    return out


def gauss_census(p: int, d: int):
    """(enumerated irreducible count, Gauss formula value) for monic degree d."""
    if p**d > _GAUSS_GUARD:
        raise TooLarge(f"p^d = {p**d} exceeds enumeration guard")
    ctx = make_prime_field(p)
    qbits = [int(b) for b in bin(p)[2:]]
    count = 0
    for idx in range(p**d):
        g = []
        rem = idx
        for _ in range(d):
            g.append(rem % p)
            rem //= p
        g.append(1)
        pattern = _pattern_or_none_int(p, g, qbits)
        if pattern == (d,):
            count += 1
    total = sum(_int_mobius(d // e) * p**e for e in range(1, d + 1) if d % e == 0)
    assert total % d == 0
    return count, total // d


# ---------------------------------------------------------------------------
# Morse genericity scan


@dataclass
class MorseScanReport:
    params: dict
    q: int
    bad_count: int
    bad_s: tuple
    warnings: tuple
    elapsed: float = 0.0


def morse_density_scan(ctx, f) -> MorseScanReport:
    """Count s in F_q for which f + s*x fails to be Morse.

    Hypothesis violations (p | 2d or f'' = 0) are reported in ``warnings``
    rather than aborting the scan.
    """
    t0 = time.perf_counter()
    if f.degree < 2 or not f.is_monic:
        raise OutOfRange("scan needs a monic polynomial of degree >= 2")
    if ctx.q > _SCAN_GUARD:
        raise TooLarge("scan guard exceeded")
    warnings = []
    if math.gcd(ctx.q, 2 * f.degree) != 1:
        warnings.append("gcd(q, 2d) != 1: genericity proposition hypothesis fails")
    fpp = derivative(derivative(f))
    if fpp.is_zero:
        warnings.append("f'' = 0: genericity proposition hypothesis fails")
    bad = []
    base = list(f.raw_coeffs)
    while len(base) < 2:
        base.append(ctx.zero_raw)
    for idx in range(ctx.q):
        s = ctx.raw_from_index(idx)
        coeffs = list(base)
        coeffs[1] = ctx.add(coeffs[1], s)
        f_s = Poly.from_raw(ctx, coeffs)
        ok, _ = is_morse(f_s)
        if not ok:
            bad.append(FieldElement(ctx, s))
    return MorseScanReport(
        params=_params_dict(ctx, f),
        q=ctx.q,
        bad_count=len(bad),
        bad_s=tuple(bad),
        warnings=tuple(warnings),
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# Möbius battery and the fixed-characteristic demo


@dataclass
class MoebiusBatteryResult:
    single: ExperimentReport
    chowla: ExperimentReport
    verdict: object
    branch: str  # "no-cancellation" or "cancellation"


def moebius_battery(ctx, f, shifts, tolerance_c: float = 4.0, workers: int = 1) -> MoebiusBatteryResult:
    """Möbius sum, Chowla product sum, classifier verdict, dichotomy assertion.

    Raises DichotomyViolation when the two sums disagree about which branch
    of the cancellation dichotomy they sit in (at tolerance C * sqrt(q)).
    """
    if ctx.p == 2 or ctx.p <= f.degree:
        raise FieldTooSmall("battery assumes odd p > deg(f)")
    shifts = tuple(h if isinstance(h, FieldElement) else ctx(h) for h in shifts)
    mu = make_builtin("moebius", f.degree)
    single = class_sum(ctx, f.shift_const(shifts[0]), mu, workers)
    spec = IntervalSpec(ctx, f, shifts, (mu,) * len(shifts))
    chowla = correlation_sum(spec, workers)
    verdict = classify_mu_cancellation(f)
    q = ctx.q
    rt = tolerance_c * math.sqrt(q)
    s1, sk = abs(single.raw_sum), abs(chowla.raw_sum)
    big = s1 >= q - rt and sk >= q - rt
    small = s1 <= rt and sk <= rt
    if not (big or small):
        raise DichotomyViolation(
            f"|single| = {s1}, |chowla| = {sk}, q = {q}, C = {tolerance_c}"
        )
    # the two bands can overlap at tiny q; label by the midpoint then
    branch = "no-cancellation" if 2 * s1 >= q else "cancellation"
    return MoebiusBatteryResult(single, chowla, verdict, branch)


def _stickelberger_product_sum(ctx, f, shifts):
    """Exact sum over a of prod_i mu(f + h_i + a) via discriminant parity.

    Valid for odd q; uses D(t) = disc(f + t) and a precomputed square table,
    so each term costs a few field multiplications.
    """
    dpoly = disc_in_t(f)
    d_raws = list(dpoly.raw_coeffs)
    squares = set()
    for idx in range(ctx.q):
        r = ctx.raw_from_index(idx)
        squares.add(ctx.mul(r, r))
    sign_d = 1 if (f.degree * len(shifts)) % 2 == 0 else -1
    shift_raws = [h.raw for h in shifts]
    total = 0
    zero_count = 0
    plus = minus = 0
    for idx in range(ctx.q):
        a = ctx.raw_from_index(idx)
        prod = 1
        for h in shift_raws:
            t = ctx.add(h, a)
            acc = ctx.zero_raw
            for c in reversed(d_raws):
                acc = ctx.add(ctx.mul(acc, t), c)
            if ctx.is_zero(acc):
                prod = 0
                break
            if acc not in squares:
                prod = -prod
        if prod == 0:
            zero_count += 1
            continue
        prod *= sign_d
        if prod > 0:
            plus += 1
        else:
            minus += 1
        total += prod
    return total, zero_count, plus, minus


@dataclass
class LargeQStep:
    l: int
    q: int
    s: str
    beta: str
    shifts: tuple
    multiset_multiplicity_two: bool
    single_report: ExperimentReport
    product_sum: int
    product_zero_count: int
    product_plus: int
    product_minus: int
    sqrt_q: float
    elapsed: float = 0.0


@dataclass
class LargeQDemoReport:
    p: int
    steps: tuple


def large_q_demo(p: int = 5, l_list=(1, 4), seed: int = 0, workers: int = 1) -> LargeQDemoReport:
    """Fixed characteristic, growing q: single Möbius sums cancel while the
    p-shift Chowla product does not.

    For each q = p^l, picks the first s in F_p^* whose critical points lie in
    F_q (-s/3 a nonzero square), takes f_s = x^3 + s*x and shifts i * beta for
    beta a critical value; the multiset union of the shifted critical values
    then covers an F_p-line with multiplicity two, forcing a constant-sign
    Chowla product.
    """
    if p < 5 or p % 2 == 0:
        raise OutOfRange("demo needs an odd prime p >= 5")
    base = make_prime_field(p)
    steps = []
    for l in l_list:
        if p**l > _SCAN_GUARD:
            raise TooLarge(f"q = {p}^{l} exceeds demo guard")
        t0 = time.perf_counter()
        ctx = make_extension(base, l, 0)
        three_inv = ctx.inv(ctx.from_int(3))
        s_raw = None
        for s_int in range(1, p):
            cand = ctx.from_int(s_int)
            target = ctx.neg(ctx.mul(cand, three_inv))
            if not ctx.is_zero(target) and ctx.is_square(target):
                s_raw = cand
                break
        if s_raw is None:
            raise NoSuitableS(f"no admissible s in F_{p}^* for q = {ctx.q}")
        f_s = Poly.from_raw(ctx, [ctx.zero_raw, s_raw, ctx.zero_raw, ctx.one_raw])
        cd = critical_data(f_s)
        assert cd.ext_ctx == ctx, "critical values must lie in F_q by construction"
        value_raws = sorted(cd.value_set_raws(), key=ctx.index_of)
        beta = value_raws[0]
        shifts = []
        acc = ctx.zero_raw
        for _ in range(p):
            acc = ctx.add(acc, beta)
            shifts.append(FieldElement(ctx, acc))
        counter = {}
        for r in value_raws:
            for h in shifts:
                key = ctx.add(r, h.raw)
                counter[key] = counter.get(key, 0) + 1
        multiset_ok = all(v == 2 for v in counter.values())
        mu = make_builtin("moebius", 3)
        single = class_sum(ctx, f_s, mu, workers)
        total, zeros, plus, minus = _stickelberger_product_sum(ctx, f_s, shifts)
        steps.append(
            LargeQStep(
                l=l,
                q=ctx.q,
                s=repr(FieldElement(ctx, s_raw)),
                beta=repr(FieldElement(ctx, beta)),
                shifts=tuple(repr(h) for h in shifts),
                multiset_multiplicity_two=multiset_ok,
                single_report=single,
                product_sum=total,
                product_zero_count=zeros,
                product_plus=plus,
                product_minus=minus,
                sqrt_q=math.sqrt(ctx.q),
                elapsed=time.perf_counter() - t0,
            )
        )
    return LargeQDemoReport(p=p, steps=tuple(steps))
