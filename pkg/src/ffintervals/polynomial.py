"""Univariate polynomials over a FieldCtx.

Coefficients are stored in raw form (ints for prime fields, tuples for
extensions), ascending degree, no trailing zeros.  The zero polynomial has an
empty coefficient tuple and degree -1.

Besides ring arithmetic this module provides gcds, squarefree/distinct-degree/
equal-degree factorization, Rabin's irreducibility test, resultants and
discriminants, the one-variable discriminant interpolation disc_in_t, and a
trial-division oracle used by the test suite.  Cycle types of squarefree
polynomials come from distinct-degree factorization alone (degree_pattern),
which is the hot path of the interval sweeps; for prime fields it runs on
plain int lists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .class_functions import CycleType
from .errors import (
    CtxMismatch,
    FieldTooSmall,
    NotSquarefree,
    OutOfRange,
    TooLarge,
    ZeroInput,
)
from .finite_field import FieldCtx, FieldElement

_BRUTE_FORCE_GUARD = 10**6


# ---------------------------------------------------------------------------
# raw-coefficient helpers (lists of raws, ascending, trimmed)


def _trim(c):
    while c and (c[-1] == 0 if isinstance(c[-1], int) else not any(c[-1])):
        c.pop()
    return c


def _radd(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero_raw
    out = [
        ctx.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)
    ]
    return _trim(out)


def _rsub(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero_raw
    out = [
        ctx.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)
    ]
    return _trim(out)


def _rmul(ctx, a, b):
    if not a or not b:
        return []
    z = ctx.zero_raw
    out = [z] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ctx.is_zero(ai):
            for j, bj in enumerate(b):
                out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
    return _trim(out)


def _rdivmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = ctx.inv(b[-1])
    quo = [ctx.zero_raw] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not ctx.is_zero(c):
            k = ctx.mul(c, inv)
            quo[i - db] = k
            for j in range(db + 1):
                a[i - db + j] = ctx.sub(a[i - db + j], ctx.mul(k, b[j]))
    return _trim(quo), _trim(a)


def _rmonic(ctx, a):
    if not a:
        return []
    lc = a[-1]
    if lc == ctx.one_raw:
        return list(a)
    inv = ctx.inv(lc)
    return [ctx.mul(c, inv) for c in a]


def _rgcd(ctx, a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _rdivmod(ctx, a, b)
        a, b = b, r
    return _rmonic(ctx, a)


def _rpowmod(ctx, base, e: int, mod):
    _, t = _rdivmod(ctx, base, mod)
    acc = [ctx.one_raw]
    while e:
        if e & 1:
            _, acc = _rdivmod(ctx, _rmul(ctx, acc, t), mod)
        e >>= 1
        if e:
            _, t = _rdivmod(ctx, _rmul(ctx, t, t), mod)
    return acc


def _reval(ctx, a, x):
    acc = ctx.zero_raw
    for c in reversed(a):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def _rderiv(ctx, a):
    out = [ctx.scalar_mul(i, a[i]) for i in range(1, len(a))]
    return _trim(out)


# ---------------------------------------------------------------------------
# int fast path for prime fields (coefficients are plain ints here)


def _imulmod(p, a, b, m):
    dm = len(m) - 1
    t = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                t[i + j] = (t[i + j] + ai * bj) % p
    for i in range(len(t) - 1, dm - 1, -1):
        c = t[i]
        if c:
            t[i] = 0
            off = i - dm
            for j in range(dm):
                t[off + j] = (t[off + j] - c * m[j]) % p
    while t and t[-1] == 0:
        t.pop()
    return t


def _imod(p, a, b):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            k = c * inv % p
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - k * b[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _igcd_monic(p, a, b):
    while b:
        a, b = b, _imod(p, a, b)
    if a and a[-1] != 1:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ipowmod_x(p, qbits, m):
    """x^e mod m where e has binary digits qbits (most significant first)."""
    t = [0, 1]
    if len(m) - 1 <= 1:
        t = _imod(p, t, m)
    acc = t
    for bit in qbits[1:]:
        acc = _imulmod(p, acc, acc, m)
        if bit:
            # multiply by x: shift up one degree then reduce
            acc = _imulmod(p, acc, [0, 1], m)
    return acc


def _pattern_or_none_int(p, g, qbits):
    """Cycle type of g (monic int-coeff list) or None if not squarefree.

    qbits are the binary digits of q, most significant first.  This is the
    sweep hot path: distinct-degree steps only, no equal-degree splitting.
    """
    gp = [i * g[i] % p for i in range(1, len(g))]
    while gp and gp[-1] == 0:
        gp.pop()
    if not gp:
        return None
    if len(_igcd_monic(p, list(g), gp)) > 1:
        return None
    rem = list(g)
    parts = []
    h = None
    i = 0
    while True:
        e = len(rem) - 1
        if 2 * (i + 1) > e:
            break
        i += 1
        if h is None:
            h = _ipowmod_x(p, qbits, rem)
        else:
            base = h
            acc = h
            for bit in qbits[1:]:
                acc = _imulmod(p, acc, acc, rem)
                if bit:
                    acc = _imulmod(p, acc, base, rem)
            h = acc
        hx = list(h) + [0] * (2 - len(h))
        hx[1] = (hx[1] - 1) % p
        while hx and hx[-1] == 0:
            hx.pop()
        gi = _igcd_monic(p, hx, list(rem))
        dgi = len(gi) - 1
        if dgi > 0:
            parts.extend([i] * (dgi // i))
            rem = _imod_exact_div(p, rem, gi)
            if len(rem) - 1 > 0:
                h = _imod(p, h, rem)
    if len(rem) - 1 > 0:
        parts.append(len(rem) - 1)
    parts.sort(reverse=True)
    return tuple(parts)


def _imod_exact_div(p, a, b):
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    a = list(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            k = c * inv % p
            quo[i - db] = k
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - k * b[j]) % p
    return quo


def _pattern_or_none_generic(ctx, g):
    gp = _rderiv(ctx, g)
    if not gp:
        return None
    if len(_rgcd(ctx, g, gp)) > 1:
        return None
    q = ctx.q
    rem = list(g)
    parts = []
    h = None
    i = 0
    while True:
        e = len(rem) - 1
        if 2 * (i + 1) > e:
            break
        i += 1
        if h is None:
            h = _rpowmod(ctx, [ctx.zero_raw, ctx.one_raw], q, rem)
        else:
            h = _rpow_poly_mod(ctx, h, q, rem)
        hx = _rsub(ctx, h, [ctx.zero_raw, ctx.one_raw])
        gi = _rgcd(ctx, hx, rem)
        dgi = len(gi) - 1
        if dgi > 0:
            parts.extend([i] * (dgi // i))
            rem, _ = _rdivmod(ctx, rem, gi)
            if len(rem) - 1 > 0:
                _, h = _rdivmod(ctx, h, rem)
    if len(rem) - 1 > 0:
        parts.append(len(rem) - 1)
    parts.sort(reverse=True)
    return tuple(parts)


def _rpow_poly_mod(ctx, base, e, mod):
    acc = [ctx.one_raw]
    t = list(base)
    while e:
        if e & 1:
            _, acc = _rdivmod(ctx, _rmul(ctx, acc, t), mod)
        e >>= 1
        if e:
            _, t = _rdivmod(ctx, _rmul(ctx, t, t), mod)
    return acc


def cycle_pattern_or_none(ctx, coeffs):
    """Cycle type (descending tuple) of a monic raw-coefficient list, or None."""
    if ctx.l == 1:
        qbits = [int(b) for b in bin(ctx.q)[2:]]
        return _pattern_or_none_int(ctx.p, list(coeffs), qbits)
    return _pattern_or_none_generic(ctx, list(coeffs))


# ---------------------------------------------------------------------------
# Poly


class Poly:
    """Dense univariate polynomial over a FieldCtx (immutable)."""

    __slots__ = ("ctx", "_c")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        raws = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.ctx != ctx:
                    raise CtxMismatch("coefficient from a different field")
                raws.append(c.raw)
            elif isinstance(c, int):
                raws.append(ctx.from_int(c))
            elif isinstance(c, tuple) and ctx.l > 1 and len(c) == ctx.l:
                raws.append(c)
            else:
                raise OutOfRange(f"bad coefficient {c!r}")
        self.ctx = ctx
        self._c = tuple(_trim(raws))

    @classmethod
    def from_raw(cls, ctx, raws):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj._c = tuple(_trim(list(raws)))
        return obj

    @classmethod
    def x(cls, ctx):
        return cls.from_raw(ctx, [ctx.zero_raw, ctx.one_raw])

    # -- views ---------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def raw_coeffs(self) -> tuple:
        return self._c

    @property
    def coeffs(self) -> tuple:
        return tuple(FieldElement(self.ctx, c) for c in self._c)

    def coeff(self, i: int) -> FieldElement:
        raw = self._c[i] if 0 <= i < len(self._c) else self.ctx.zero_raw
        return FieldElement(self.ctx, raw)

    @property
    def is_zero(self) -> bool:
        return not self._c

    def lc(self) -> FieldElement:
        if not self._c:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return FieldElement(self.ctx, self._c[-1])

    @property
    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == self.ctx.one_raw

    def canonical_key(self):
        """Sort key: (degree, coefficient indices ascending by power)."""
        return (self.degree, tuple(self.ctx.index_of(c) for c in self._c))

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            raise CtxMismatch(f"expected Poly, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise CtxMismatch("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Poly.from_raw(self.ctx, _radd(self.ctx, list(self._c), list(other._c)))

    def __sub__(self, other):
        other = self._check(other)
        return Poly.from_raw(self.ctx, _rsub(self.ctx, list(self._c), list(other._c)))

    def __neg__(self):
        return Poly.from_raw(self.ctx, [self.ctx.neg(c) for c in self._c])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise CtxMismatch("scalar from a different field")
            return Poly.from_raw(
                self.ctx, _trim([self.ctx.mul(c, other.raw) for c in self._c])
            )
        other = self._check(other)
        return Poly.from_raw(self.ctx, _rmul(self.ctx, list(self._c), list(other._c)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        q, r = _rdivmod(self.ctx, list(self._c), list(other._c))
        return Poly.from_raw(self.ctx, q), Poly.from_raw(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise OutOfRange("negative polynomial power")
        acc = Poly.from_raw(self.ctx, [self.ctx.one_raw])
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Poly) and self.ctx == other.ctx and self._c == other._c
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.l, self._c))

    def __bool__(self):
        return bool(self._c)

    def monic(self) -> "Poly":
        return Poly.from_raw(self.ctx, _rmonic(self.ctx, list(self._c)))

    def shift_const(self, a) -> "Poly":
        """self + a for a field element (the interval parameter)."""
        raw = a.raw if isinstance(a, FieldElement) else self.ctx.from_int(a)
        c = list(self._c) if self._c else [self.ctx.zero_raw]
        c[0] = self.ctx.add(c[0], raw)
        return Poly.from_raw(self.ctx, c)

    def __call__(self, a):
        raw = a.raw if isinstance(a, FieldElement) else self.ctx.from_int(a)
        return FieldElement(self.ctx, _reval(self.ctx, self._c, raw))

    def __repr__(self):
        from .polyparse import format_poly

        return format_poly(self)


def poly_from_index(ctx, degree: int, idx: int, monic: bool = True) -> Poly:
    """The idx-th monic polynomial of the given degree in canonical order."""
    coeffs = []
    for _ in range(degree):
        coeffs.append(ctx.raw_from_index(idx % ctx.q))
        idx //= ctx.q
    if monic:
        coeffs.append(ctx.one_raw)
    return Poly.from_raw(ctx, coeffs)


def random_monic(ctx, degree: int, rng: random.Random) -> Poly:
    return poly_from_index(ctx, degree, rng.randrange(ctx.q**degree))


# ---------------------------------------------------------------------------
# calculus


def derivative(f: Poly) -> Poly:
    """Formal derivative in characteristic p."""
    return Poly.from_raw(f.ctx, _rderiv(f.ctx, list(f._c)))


def second_hasse_schmidt(f: Poly) -> Poly:
    """Second Hasse-Schmidt derivative: sum C(i,2) a_i x^(i-2)."""
    ctx = f.ctx
    out = []
    for i in range(2, len(f._c)):
        out.append(ctx.scalar_mul(i * (i - 1) // 2, f._c[i]))
    return Poly.from_raw(ctx, out)


# ---------------------------------------------------------------------------
# gcd and squarefree structure


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor; gcd(f, 0) = monic(f), gcd(0, 0) = 0."""
    if f.ctx != g.ctx:
        raise CtxMismatch("gcd over different fields")
    return Poly.from_raw(f.ctx, _rgcd(f.ctx, list(f._c), list(g._c)))


def is_squarefree(g: Poly) -> bool:
    """True iff g has no repeated irreducible factor.

    When g' = 0 the polynomial is a p-th power (F_q is perfect), hence not
    squarefree.
    """
    if g.degree < 1:
        raise OutOfRange("squarefree test needs degree >= 1")
    ctx = g.ctx
    gp = _rderiv(ctx, list(g._c))
    if not gp:
        return False
    return len(_rgcd(ctx, list(g._c), gp)) == 1


def _pth_root_raws(ctx, a):
    p = ctx.p
    out = []
    for i in range(0, len(a), p):
        out.append(ctx.pth_root(a[i]))
    return _trim(out)


def _sqf_decompose(ctx, g):
    """Squarefree decomposition of a monic raw list: dict exponent -> raw list."""
    res = {}
    gp = _rderiv(ctx, g)
    if not gp:
        for e, s in _sqf_decompose(ctx, _pth_root_raws(ctx, g)).items():
            res[e * ctx.p] = s
        return res
    c = _rgcd(ctx, g, gp)
    w, _ = _rdivmod(ctx, g, c)
    i = 1
    while len(w) - 1 > 0:
        y = _rgcd(ctx, w, c)
        z, _ = _rdivmod(ctx, w, y)
        if len(z) - 1 > 0:
            res[i] = z
        w = y
        c, _ = _rdivmod(ctx, c, y)
        i += 1
    if len(c) - 1 > 0:
        for e, s in _sqf_decompose(ctx, _pth_root_raws(ctx, c)).items():
            key = e * ctx.p
            res[key] = _rmul(ctx, res[key], s) if key in res else s
    return res


def squarefree_decomposition(g: Poly):
    """g = unit * prod s_e^e with each s_e monic squarefree, pairwise coprime.

    Returns (unit, list of (Poly, exponent)) sorted by exponent.
    """
    if g.degree < 1:
        raise OutOfRange("decomposition needs degree >= 1")
    unit = g.lc()
    parts = _sqf_decompose(g.ctx, _rmonic(g.ctx, list(g._c)))
    out = [(Poly.from_raw(g.ctx, raws), e) for e, raws in sorted(parts.items())]
    return unit, out


# ---------------------------------------------------------------------------
# irreducibility и factorization


def _small_prime_factors(n: int):
    out = []
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def is_irreducible(g: Poly) -> bool:
    """Rabin's test over F_q."""
    if g.degree < 1:
        raise OutOfRange("irreducibility needs degree >= 1")
    ctx = g.ctx
    d = g.degree
    if d == 1:
        return True
    m = _rmonic(ctx, list(g._c))
    q = ctx.q
    x = [ctx.zero_raw, ctx.one_raw]
    # iterated q-power images x^(q^j) mod m for j = 1..d
    towers = {}
    t = _rpowmod(ctx, x, q, m)
    towers[1] = t
    for j in range(2, d + 1):
        t = _rpow_poly_mod(ctx, t, q, m)
        towers[j] = t
    if _trim(_rsub(ctx, towers[d], x)):
        return False
    for r in _small_prime_factors(d):
        h = _rsub(ctx, towers[d // r], x)
        if len(_rgcd(ctx, h, m)) != 1:
            return False
    return True


def degree_pattern(g: Poly) -> CycleType:
    """Cycle type of a squarefree monic g via distinct-degree factorization."""
    if g.degree < 1:
        raise OutOfRange("degree_pattern needs degree >= 1")
    work = _rmonic(g.ctx, list(g._c))
    pattern = cycle_pattern_or_none(g.ctx, work)
    if pattern is None:
        raise NotSquarefree(f"{g!r} has a repeated factor")
    return CycleType(pattern)


def _ddf(ctx, g):
    """Distinct-degree split of a monic squarefree raw list: list of (raws, i)."""
    q = ctx.q
    rem = list(g)
    out = []
    h = None
    i = 0
    while True:
        e = len(rem) - 1
        if 2 * (i + 1) > e:
            break
        i += 1
        if h is None:
            h = _rpowmod(ctx, [ctx.zero_raw, ctx.one_raw], q, rem)
        else:
            h = _rpow_poly_mod(ctx, h, q, rem)
        hx = _rsub(ctx, h, [ctx.zero_raw, ctx.one_raw])
        gi = _rgcd(ctx, hx, rem)
        if len(gi) - 1 > 0:
            out.append((gi, i))
            rem, _ = _rdivmod(ctx, rem, gi)
            if len(rem) - 1 > 0:
                _, h = _rdivmod(ctx, h, rem)
    if len(rem) - 1 > 0:
        out.append((rem, len(rem) - 1))
    return out


def _random_nonconstant(ctx, max_deg, rng):
    while True:
        raws = [ctx.raw_from_index(rng.randrange(ctx.q)) for _ in range(max_deg + 1)]
        raws = _trim(raws)
        if len(raws) - 1 >= 1:
            return raws


def _edf(ctx, u, m, rng):
    """Split a monic product of distinct degree-m irreducibles into factors."""
    out = []
    stack = [u]
    q = ctx.q
    while stack:
        v = stack.pop()
        dv = len(v) - 1
        if dv == m:
            out.append(v)
            continue
        while True:
            a = _random_nonconstant(ctx, dv - 1, rng)
            if ctx.p == 2:
                # trace map over F_2 splits for even q
                t = list(a)
                acc = list(a)
                for _ in range(ctx.l * m - 1):
                    t = _rpow_poly_mod(ctx, t, 2, v)
                    acc = _radd(ctx, acc, t)
                w = _rgcd(ctx, acc, v)
            else:
                b = _rpow_poly_mod(ctx, a, (q**m - 1) // 2, v)
                w = _rgcd(ctx, _rsub(ctx, b, [ctx.one_raw]), v)
            dw = len(w) - 1
            if 0 < dw < dv:
                rest, _ = _rdivmod(ctx, v, w)
                stack.append(w)
                stack.append(rest)
                break
    return out


@dataclass(frozen=True)
class FactorizationResult:
    """Monic irreducible factors with multiplicities, plus the leading unit."""

    factors: tuple  # ((Poly, multiplicity), ...) canonically sorted
    unit: FieldElement

    @property
    def omega(self) -> int:
        """Number of distinct irreducible factors."""
        return len(self.factors)

    def reconstruct(self) -> Poly:
        ctx = self.unit.ctx
        acc = Poly.from_raw(ctx, [self.unit.raw])
        for poly, mult in self.factors:
            acc = acc * poly**mult
        return acc

    def multiset_degrees(self) -> tuple:
        degs = []
        for poly, mult in self.factors:
            degs.extend([poly.degree] * mult)
        return tuple(sorted(degs, reverse=True))


def factor(g: Poly, seed: int = 0) -> FactorizationResult:
    """Full factorization: squarefree, then distinct-degree, then equal-degree.

    The factor set is independent of ``seed``; the seed only steers the
    random splitting elements inside Cantor-Zassenhaus.
    """
    if g.degree < 1:
        raise OutOfRange("factorization needs degree >= 1")
    ctx = g.ctx
    rng = random.Random(f"edf/{seed}/{ctx.p}/{ctx.l}")
    unit = g.lc()
    found = []
    for exponent, part in (
        (e, raws) for e, raws in sorted(_sqf_decompose(ctx, _rmonic(ctx, list(g._c))).items())
    ):
        for block, deg_i in _ddf(ctx, part):
            for raws in _edf(ctx, block, deg_i, rng):
                found.append((Poly.from_raw(ctx, raws), exponent))
    found.sort(key=lambda fm: fm[0].canonical_key())
    return FactorizationResult(tuple(found), unit)


def brute_force_factor(g: Poly) -> FactorizationResult:
    """Trial division by every monic polynomial of degree <= deg(g)/2.

    The independence oracle for factor(); guarded so the enumeration stays
    desk-sized.
    """
    if g.degree < 1:
        raise OutOfRange("factorization needs degree >= 1")
    ctx = g.ctx
    if ctx.q ** ((g.degree + 1) // 2) > _BRUTE_FORCE_GUARD:
        raise TooLarge("brute-force factor guard exceeded")
    unit = g.lc()
    work = g.monic()
    found = []
    for m in range(1, g.degree // 2 + 1):
        if work.degree < 2 * m:
            break
        for idx in range(ctx.q**m):
            cand = poly_from_index(ctx, m, idx)
            mult = 0
            while work.degree >= m:
                quo, rem = divmod(work, cand)
                if rem.is_zero:
                    work = quo
                    mult += 1
                else:
                    break
            if mult:
                found.append((cand, mult))
            if work.degree < 2 * m:
                break
    if work.degree >= 1:
        found.append((work, 1))
    found.sort(key=lambda fm: fm[0].canonical_key())
    return FactorizationResult(tuple(found), unit)


def roots_in_field(g: Poly, seed: int = 0):
    """All roots of g in its own coefficient field, sorted by canonical index."""
    if g.degree < 1:
        raise OutOfRange("root finding needs degree >= 1")
    ctx = g.ctx
    m = _rmonic(ctx, list(g._c))
    x = [ctx.zero_raw, ctx.one_raw]
    h = _rpowmod(ctx, x, ctx.q, m)
    lin = _rgcd(ctx, _rsub(ctx, h, x), m)
    if len(lin) - 1 < 1:
        return []
    rng = random.Random(f"roots/{seed}/{ctx.p}/{ctx.l}")
    roots = []
    for raws in _edf(ctx, lin, 1, rng):
        roots.append(ctx.neg(raws[0]))
    roots.sort(key=ctx.index_of)
    return [FieldElement(ctx, r) for r in roots]


# ---------------------------------------------------------------------------
# resultants and discriminants


def resultant(f: Poly, g: Poly) -> FieldElement:
    """Res(f, g) via the Euclidean remainder sequence."""
    if f.ctx != g.ctx:
        raise CtxMismatch("resultant over different fields")
    if f.is_zero or g.is_zero:
        raise ZeroInput("resultant of the zero polynomial")
    ctx = f.ctx
    a, b = list(f._c), list(g._c)
    res = ctx.one_raw
    negate = False
    if len(a) < len(b):
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            negate = not negate
        a, b = b, a
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            res = ctx.mul(res, ctx.pow_raw(b[0], da))
            break
        _, r = _rdivmod(ctx, a, b)
        if not r:
            return FieldElement(ctx, ctx.zero_raw)
        dr = len(r) - 1
        if (da * db) % 2 == 1:
            negate = not negate
        res = ctx.mul(res, ctx.pow_raw(b[-1], da - dr))
        a, b = b, r
    if negate:
        res = ctx.neg(res)
    return FieldElement(ctx, res)


def discriminant(g: Poly) -> FieldElement:
    """disc(g) = (-1)^(d(d-1)/2) Res(g, g') for monic g; 0 iff g not squarefree."""
    if g.degree < 1:
        raise OutOfRange("discriminant needs degree >= 1")
    if not g.is_monic:
        raise OutOfRange("discriminant expects a monic polynomial")
    ctx = g.ctx
    gp = derivative(g)
    if gp.is_zero:
        return FieldElement(ctx, ctx.zero_raw)
    res = resultant(g, gp)
    if (g.degree * (g.degree - 1) // 2) % 2 == 1:
        return -res
    return res


def disc_in_t(f: Poly) -> Poly:
    """The discriminant of f + t as a polynomial in t, by interpolation.

    Evaluates disc(f + a) at deg(f) distinct points and Lagrange-interpolates;
    the result has degree at most deg(f) - 1.
    """
    d = f.degree
    if d < 2:
        raise OutOfRange("disc_in_t needs degree >= 2")
    if not f.is_monic:
        raise OutOfRange("disc_in_t expects a monic polynomial")
    ctx = f.ctx
    if ctx.p <= d:
        raise FieldTooSmall(f"need p > deg(f) = {d}, got p = {ctx.p}")
    nodes = [ctx.raw_from_index(i) for i in range(d)]
    values = [discriminant(f.shift_const(FieldElement(ctx, a))).raw for a in nodes]
    return _lagrange(ctx, nodes, values)


def _lagrange(ctx, nodes, values) -> Poly:
    full = [ctx.one_raw]
    for x in nodes:
        full = _rmul(ctx, full, [ctx.neg(x), ctx.one_raw])
    acc = []
    for xj, vj in zip(nodes, values):
        numer, _ = _rdivmod(ctx, full, [ctx.neg(xj), ctx.one_raw])
        denom = _reval(ctx, numer, xj)
        scale = ctx.mul(vj, ctx.inv(denom))
        term = [ctx.mul(c, scale) for c in numer]
        acc = _radd(ctx, acc, term)
    return Poly.from_raw(ctx, acc)
