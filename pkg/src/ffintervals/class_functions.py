"""Partitions of d, class functions on S_d, and their exact mean constants.

A cycle type is a partition of d written in descending order.  A class
function assigns an exact rational to every partition of d, plus a bounded
default used on non-squarefree polynomials (0 for all builtins).  Values are
``fractions.Fraction`` end to end; floats appear only in normalized error
reporting elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeMismatch, OutOfRange, WeightsNotNormalized

_MAX_D = 12


@dataclass(frozen=True)
class CycleType:
    """A partition of d, descending; the cycle type of a permutation in S_d."""

    parts: tuple

    def __post_init__(self):
        if not self.parts or any(x < 1 for x in self.parts):
            raise OutOfRange(f"invalid partition {self.parts}")
        if tuple(sorted(self.parts, reverse=True)) != tuple(self.parts):
            raise OutOfRange(f"partition not descending: {self.parts}")

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    @property
    def mu_value(self) -> int:
        """(-1)^(number of parts), the Möbius value of this cycle type."""
        return -1 if len(self.parts) % 2 else 1

    @property
    def sgn_value(self) -> int:
        """Permutation sign: (-1)^(sum of (part - 1))."""
        return -1 if (self.d - len(self.parts)) % 2 else 1

    def centralizer_order(self) -> int:
        """z_lambda = prod(i^m_i * m_i!); |S_d| / z_lambda is the class size."""
        z = 1
        mult = {}
        for part in self.parts:
            mult[part] = mult.get(part, 0) + 1
        for i, m in mult.items():
            z *= i**m * math.factorial(m)
        return z

    def __str__(self):
        return ",".join(str(x) for x in self.parts)

    def __lt__(self, other):
        return self.parts > other.parts  # reverse-lex: {4} before {3,1}


def partitions_of(d: int):
    """All partitions of d as CycleTypes, in canonical reverse-lex order."""
    if not 1 <= d <= _MAX_D:
        raise OutOfRange(f"d must be in [1, {_MAX_D}], got {d}")
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(CycleType(tuple(prefix)))
            return
        for nxt in range(min(cap, remaining), 0, -1):
            rec(remaining - nxt, nxt, prefix + [nxt])

    rec(d, d, [])
    return out


@dataclass(frozen=True)
class ClassFunction:
    """Table from partitions of d to exact rationals, with a bounded default."""

    d: int
    name: str
    table: dict
    default_nonsquarefree: Fraction = Fraction(0)

    def __post_init__(self):
        expected = {ct.parts for ct in partitions_of(self.d)}
        got = {ct.parts for ct in self.table}
        if got != expected:
            raise OutOfRange(f"table must cover all partitions of {self.d}")
        bound = max(abs(v) for v in self.table.values()) + 1
        if abs(self.default_nonsquarefree) > bound:
            raise OutOfRange("non-squarefree default exceeds the d-dependent bound")

    def __call__(self, ct: CycleType) -> Fraction:
        return self.table[ct]

    def __hash__(self):
        return hash((self.d, self.name))


def make_builtin(kind: str, d: int, r: int | None = None, table=None) -> ClassFunction:
    """Build one of the standard class functions on S_d.

    kind: "prime" (indicator of the d-cycle class), "moebius"
    ((-1)^(number of parts)), "divisor" (r^(number of parts), needs r >= 2),
    or "custom" (explicit table; missing partitions default to 0).
    """
    if d < 2:
        raise OutOfRange(f"class functions need d >= 2, got {d}")
    cts = partitions_of(d)
    if kind == "prime":
        tab = {ct: Fraction(1 if ct.parts == (d,) else 0) for ct in cts}
        return ClassFunction(d, "prime", tab)
    if kind == "moebius":
        tab = {ct: Fraction(ct.mu_value) for ct in cts}
        return ClassFunction(d, "moebius", tab)
    if kind == "divisor":
        if r is None or r < 2:
            raise OutOfRange(f"divisor function needs r >= 2, got {r}")
        tab = {ct: Fraction(r**ct.num_parts) for ct in cts}
        return ClassFunction(d, f"d{r}", tab)
    if kind == "custom":
        if table is None:
            raise OutOfRange("custom class function needs a table")
        tab = {ct: Fraction(table.get(ct.parts, table.get(ct, 0))) for ct in cts}
        return ClassFunction(d, "custom", tab)
    raise OutOfRange(f"unknown class function kind {kind!r}")


def mean_constant(phi: ClassFunction) -> Fraction:
    """Average of phi over S_d: sum over partitions of phi(lambda)/z_lambda."""
    total = Fraction(0)
    for ct in partitions_of(phi.d):
        total += phi(ct) / ct.centralizer_order()
    return total


def coset_constant(phi: ClassFunction, weights: dict) -> Fraction:
    """Weighted average of phi; weights is a map partition -> Fraction summing to 1.

    Partitions absent from ``weights`` get weight 0.  This realizes coset
    averages abstractly so empirically observed distributions can be plugged
    in for non-generic intervals.
    """
    norm = {}
    for key, w in weights.items():
        parts = key.parts if isinstance(key, CycleType) else tuple(key)
        norm[parts] = norm.get(parts, Fraction(0)) + Fraction(w)
    if sum(norm.values()) != 1:
        raise WeightsNotNormalized(f"weights sum to {sum(norm.values())}, expected 1")
    total = Fraction(0)
    for ct in partitions_of(phi.d):
        w = norm.get(ct.parts)
        if w:
            total += w * phi(ct)
    return total


def evaluate(phi: ClassFunction, g) -> Fraction:
    """phi(cycle type of g) for squarefree g, the bounded default otherwise."""
    from .polynomial import degree_pattern, is_squarefree

    if g.degree != phi.d:
        raise DegreeMismatch(f"deg(g) = {g.degree} but phi is on S_{phi.d}")
    if not is_squarefree(g):
        return phi.default_nonsquarefree
    return phi(degree_pattern(g))


def parse_table_text(text: str, d: int) -> ClassFunction:
    """Parse the custom class function format: one "p1,p2,...=num/den" per line.

    Partitions are written descending; missing partitions default to 0; blank
    lines and lines starting with '#' are ignored.
    """
    table = {}
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise OutOfRange(f"line {lineno}: expected 'partition=value', got {line!r}")
        lhs, rhs = line.split("=", 1)
        try:
            parts = tuple(int(x) for x in lhs.strip().split(","))
            value = Fraction(rhs.strip().replace("−", "-"))
        except (ValueError, ZeroDivisionError) as exc:
            raise OutOfRange(f"line {lineno}: {exc}") from exc
        ct = CycleType(parts)
        if ct.d != d:
            raise OutOfRange(f"line {lineno}: partition of {ct.d}, expected {d}")
        table[ct.parts] = value
    return make_builtin("custom", d, table=table)
