"""Statistics of arithmetic class functions over very short polynomial intervals.

Exact experiments over intervals {f + a : a in F_q}: prime tuple densities,
Möbius/Chowla cancellation and its dichotomy, Morse genericity scans, and
degenerate-interval phenomena, all by exact enumeration with sqrt(q)-scale
tolerance checks.
"""

from .class_functions import (
    ClassFunction,
    CycleType,
    coset_constant,
    evaluate,
    make_builtin,
    mean_constant,
    partitions_of,
)
from .finite_field import (
    FieldCtx,
    FieldElement,
    frobenius,
    in_prime_subfield,
    make_extension,
    make_prime_field,
)
from .interval_lab import (
    ExperimentReport,
    IntervalSpec,
    class_sum,
    chebotarev_empirical,
    correlation_sum,
    gauss_census,
    large_q_demo,
    moebius_battery,
    morse_density_scan,
    squarefree_census,
)
from .morse_galois import (
    CancellationVerdict,
    CriticalData,
    bad_set,
    bad_shift_check,
    classify_mu_cancellation,
    critical_data,
    is_morse,
    stickelberger_mu,
)
from .polynomial import (
    FactorizationResult,
    Poly,
    brute_force_factor,
    degree_pattern,
    derivative,
    disc_in_t,
    discriminant,
    factor,
    gcd,
    is_irreducible,
    is_squarefree,
    resultant,
    second_hasse_schmidt,
)

__version__ = "0.1.0"
