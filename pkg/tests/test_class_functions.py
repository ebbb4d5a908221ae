import math
import random
from fractions import Fraction

import pytest

from ffintervals.class_functions import (
    CycleType,
    coset_constant,
    evaluate,
    make_builtin,
    mean_constant,
    parse_table_text,
    partitions_of,
)
from ffintervals.errors import DegreeMismatch, OutOfRange, WeightsNotNormalized
from ffintervals.finite_field import make_prime_field
from ffintervals.polynomial import Poly, factor, is_squarefree, random_monic
from ffintervals.polyparse import parse_poly

F5 = make_prime_field(5)


def test_partitions_of_4_canonical_order():
    got = [ct.parts for ct in partitions_of(4)]
    assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partitions_of_1():
    assert [ct.parts for ct in partitions_of(1)] == [(1,)]


def test_partitions_range_guard():
    with pytest.raises(OutOfRange):
        partitions_of(0)
    with pytest.raises(OutOfRange):
        partitions_of(13)


@pytest.mark.parametrize("d", range(1, 9))
def test_class_equation(d):
    # sum over partitions of 1/z_lambda = 1 (the class equation of S_d)
    assert sum(Fraction(1, ct.centralizer_order()) for ct in partitions_of(d)) == 1


def test_prime_indicator_values():
    phi = make_builtin("prime", 3)
    assert phi(CycleType((3,))) == 1
    assert phi(CycleType((2, 1))) == 0
    assert phi(CycleType((1, 1, 1))) == 0


def test_moebius_values():
    phi = make_builtin("moebius", 2)
    assert phi(CycleType((1, 1))) == 1
    assert phi(CycleType((2,))) == -1


def test_divisor_value_matches_enumeration_oracle():
    # count ordered factorizations g = u*v of a linear times an irreducible
    # quadratic over F_2: divisors are 1, the linear, the quadratic, g itself
    lin = parse_poly("x", make_prime_field(2))
    quad = parse_poly("x^2+x+1", make_prime_field(2))
    g = lin * quad
    divisors = [Poly(g.ctx, [1]), lin, quad, g]
    ordered = 0
    for u in divisors:
        for v in divisors:
            if u * v == g:
                ordered += 1
    assert ordered == 4
    phi = make_builtin("divisor", 3, r=2)
    assert phi(CycleType((2, 1))) == 4


def test_divisor_requires_r():
    with pytest.raises(OutOfRange):
        make_builtin("divisor", 3)
    with pytest.raises(OutOfRange):
        make_builtin("divisor", 3, r=1)


@pytest.mark.parametrize("d", range(2, 9))
def test_mean_constants_prime_and_moebius(d):
    assert mean_constant(make_builtin("prime", d)) == Fraction(1, d)
    assert mean_constant(make_builtin("moebius", d)) == 0


@pytest.mark.parametrize("d", range(2, 9))
@pytest.mark.parametrize("r", range(2, 5))
def test_mean_constant_divisor_binomial(d, r):
    got = mean_constant(make_builtin("divisor", d, r=r))
    assert got == Fraction(math.comb(d + r - 1, r - 1))


def test_coset_constant_uniform_recovers_mean():
    phi = make_builtin("divisor", 4, r=2)
    weights = {
        ct.parts: Fraction(1, ct.centralizer_order()) for ct in partitions_of(4)
    }
    assert coset_constant(phi, weights) == mean_constant(phi)


def test_coset_constant_point_mass():
    phi = make_builtin("prime", 3)
    assert coset_constant(phi, {(3,): Fraction(1)}) == 1


def test_coset_constant_kummer_weights():
    # cubic with cube-root structure: 1/3 of the squarefree members split,
    # 2/3 stay irreducible, none has the (2,1) pattern
    phi = make_builtin("prime", 3)
    weights = {(1, 1, 1): Fraction(1, 3), (3,): Fraction(2, 3)}
    assert coset_constant(phi, weights) == Fraction(2, 3)


def test_coset_constant_rejects_unnormalized():
    phi = make_builtin("prime", 3)
    with pytest.raises(WeightsNotNormalized):
        coset_constant(phi, {(3,): Fraction(1, 2)})


def test_evaluate_on_polynomials():
    mu2 = make_builtin("moebius", 2)
    assert evaluate(mu2, parse_poly("x^2+1", F5)) == 1  # (x-2)(x-3)
    prime2 = make_builtin("prime", 2)
    assert evaluate(prime2, parse_poly("x^2+1", make_prime_field(3))) == 1
    assert evaluate(mu2, parse_poly("x^2", F5)) == 0  # non-squarefree default


def test_evaluate_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        evaluate(make_builtin("prime", 3), parse_poly("x^2+1", F5))


def test_evaluate_moebius_matches_omega():
    rng = random.Random("omega")
    checked = 0
    while checked < 500:
        d = rng.randrange(2, 7)
        g = random_monic(F5, d, rng)
        if not is_squarefree(g):
            continue
        checked += 1
        mu = make_builtin("moebius", d)
        assert evaluate(mu, g) == (-1) ** factor(g).omega


@pytest.mark.parametrize("d", range(1, 9))
def test_mu_sgn_identity(d):
    for ct in partitions_of(d):
        assert ct.mu_value == (-1) ** d * ct.sgn_value


def test_parse_table_text():
    phi = parse_table_text("4=1\n3,1=-1/2\n# comment\n\n2,2=0\n", 4)
    assert phi(CycleType((4,))) == 1
    assert phi(CycleType((3, 1))) == Fraction(-1, 2)
    assert phi(CycleType((2, 1, 1))) == 0  # missing partitions default to 0


def test_parse_table_rejects_wrong_degree():
    with pytest.raises(OutOfRange):
        parse_table_text("3=1\n", 4)


def test_default_bound_enforced():
    cts = partitions_of(2)
    table = {ct: Fraction(1) for ct in cts}
    from ffintervals.class_functions import ClassFunction

    with pytest.raises(OutOfRange):
        ClassFunction(2, "bad", table, default_nonsquarefree=Fraction(5))
