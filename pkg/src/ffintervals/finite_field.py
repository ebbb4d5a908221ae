"""Exact arithmetic in F_p and F_{p^l}.

A field context (:class:`FieldCtx`) describes either a prime field F_p or a
degree-l extension F_p[y]/(m(y)) with a monic irreducible modulus m found by
deterministic search.  Elements are stored in a "raw" form chosen for speed:
a plain int residue when l == 1, and a length-l tuple of int residues (low
coefficient first) when l > 1.  :class:`FieldElement` is a thin wrapper used
at API boundaries; hot loops elsewhere in the package work on raws directly
through the context's arithmetic methods.

The canonical index of an element with coefficients (c_0, ..., c_{l-1}) is
sum(c_i * p^i); it is a bijection onto [0, q) and is used for all
deterministic tie-breaking and enumeration order.
"""

from __future__ import annotations

from .errors import CtxMismatch, NotPrime, OutOfRange

_MAX_P = 1 << 31  # residues stay machine-word sized; products fit in 64 bits
_MAX_EXT_DEGREE = 24


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (we only need < 2^31)."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Dense int-list polynomials over F_p, used only for modulus bookkeeping here.
# Lists are ascending-degree and trimmed (empty list = zero polynomial).


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(p, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(p, a, b):
    a = list(a)
    db, inv = len(b) - 1, pow(b[-1], p - 2, p)
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            k = c * inv % p
            quo[i - db] = k
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - k * b[j]) % p
    return _ptrim(quo), _ptrim(a)


def _pxgcd(p, a, b):
    """Return (g, u, v) with u*a + v*b = g, g monic (or zero)."""
    r0, r1 = list(a), list(b)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = _pdivmod(p, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _ptrim([(x - y) % p for x, y in _zipmul(p, q, u1, u0)])
        v0, v1 = v1, _ptrim([(x - y) % p for x, y in _zipmul(p, q, v1, v0)])
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = [c * inv % p for c in r0]
        u0 = [c * inv % p for c in u0]
        v0 = [c * inv % p for c in v0]
    return r0, u0, v0


def _zipmul(p, q, a, sub_from):
    prod = _pmul(p, q, a)
    n = max(len(sub_from), len(prod))
    s = list(sub_from) + [0] * (n - len(sub_from))
    t = prod + [0] * (n - len(prod))
    return zip(s, t)


class FieldCtx:
    """Immutable description of F_q = F_{p^l}, owner of element arithmetic."""

    __slots__ = ("p", "l", "modulus", "q", "_base")

    def __init__(self, p: int, l: int = 1, modulus: tuple | None = None, _base=None):
        self.p = p
        self.l = l
        self.modulus = modulus
        self.q = p**l
        if _base is not None:
            self._base = _base
        elif l > 1:
            self._base = FieldCtx(p, 1, None)
        else:
            self._base = self

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.l == other.l
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.l, self.modulus))

    def __repr__(self):
        if self.l == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.l}"

    def __reduce__(self):
        return (FieldCtx, (self.p, self.l, self.modulus))

    def prime_field(self) -> "FieldCtx":
        """The prime subfield F_p as a context."""
        return self._base if self.l > 1 else self

    # -- raw arithmetic ------------------------------------------------------

    @property
    def zero_raw(self):
        return 0 if self.l == 1 else (0,) * self.l

    @property
    def one_raw(self):
        return 1 if self.l == 1 else (1,) + (0,) * (self.l - 1)

    def is_zero(self, a) -> bool:
        return a == 0 if self.l == 1 else not any(a)

    def add(self, a, b):
        if self.l == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.l == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.l == 1:
            return -a % self.p
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if self.l == 1:
            return a * b % self.p
        p, l, m = self.p, self.l, self.modulus
        t = [0] * (2 * l - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    t[i + j] = (t[i + j] + ai * bj) % p
        for i in range(2 * l - 2, l - 1, -1):
            c = t[i]
            if c:
                t[i] = 0
                off = i - l
                for j in range(l):
                    t[off + j] = (t[off + j] - c * m[j]) % p
        return tuple(t[:l])

    def scalar_mul(self, k: int, a):
        """Multiply by an integer scalar (k reduced mod p)."""
        k %= self.p
        if self.l == 1:
            return a * k % self.p
        p = self.p
        return tuple(x * k % p for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.l == 1:
            return pow(a, self.p - 2, self.p)
        g, u, _ = _pxgcd(self.p, list(a), list(self.modulus))
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
        return tuple(u[i] if i < len(u) else 0 for i in range(self.l))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_raw(self, a, e: int):
        if e < 0:
            return self.pow_raw(self.inv(a), -e)
        if self.l == 1:
            return pow(a, e, self.p)
        acc = self.one_raw
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def frob(self, a):
        """Frobenius a -> a^p."""
        return self.pow_raw(a, self.p)

    def pth_root(self, a):
        """Inverse of Frobenius; a^(p^(l-1))."""
        out = a
        for _ in range(self.l - 1):
            out = self.frob(out)
        return out

    def is_square(self, a) -> bool:
        """Euler criterion; 0 counts as a square. Odd q only."""
        if self.is_zero(a):
            return True
        return self.pow_raw(a, (self.q - 1) // 2) == self.one_raw

    # -- canonical index ----------------------------------------------------

    def index_of(self, a) -> int:
        if self.l == 1:
            return a
        idx = 0
        for c in reversed(a):
            idx = idx * self.p + c
        return idx

    def raw_from_index(self, idx: int):
        if not 0 <= idx < self.q:
            raise OutOfRange(f"index {idx} outside [0, {self.q})")
        if self.l == 1:
            return idx
        digits = []
        for _ in range(self.l):
            digits.append(idx % self.p)
            idx //= self.p
        return tuple(digits)

    def from_int(self, n: int):
        """Embed an integer as a prime-subfield constant (raw form)."""
        n %= self.p
        return n if self.l == 1 else (n,) + (0,) * (self.l - 1)

    # -- element wrapper ----------------------------------------------------

    def elem(self, raw) -> "FieldElement":
        return FieldElement(self, raw)

    def element_from_index(self, idx: int) -> "FieldElement":
        return FieldElement(self, self.raw_from_index(idx))

    def __call__(self, n: int) -> "FieldElement":
        return FieldElement(self, self.from_int(n))

    def elements(self):
        """All elements in canonical index order (generator)."""
        for idx in range(self.q):
            yield FieldElement(self, self.raw_from_index(idx))


class FieldElement:
    """An element of a FieldCtx; immutable, hashable, with operator overloads."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx: FieldCtx, raw):
        self.ctx = ctx
        self.raw = raw

    @property
    def coeffs(self) -> tuple:
        return (self.raw,) if self.ctx.l == 1 else self.raw

    @property
    def index(self) -> int:
        return self.ctx.index_of(self.raw)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise CtxMismatch(f"elements of {self.ctx} and {other.ctx}")
            return other.raw
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.add(self.raw, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(self.raw, raw))

    def __rsub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(raw, self.raw))

    def __mul__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.raw, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.div(self.raw, raw))

    def __rtruediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.div(raw, self.raw))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow_raw(self.raw, e))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.raw))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.l, self.raw))

    def __bool__(self):
        return not self.ctx.is_zero(self.raw)

    def __repr__(self):
        if self.ctx.l == 1:
            return str(self.raw)
        return ":".join(str(c) for c in self.raw)


def make_prime_field(p: int) -> FieldCtx:
    """Build F_p, verifying primality deterministically."""
    if p < 2:
        raise OutOfRange(f"characteristic must be >= 2, got {p}")
    if p >= _MAX_P:
        raise OutOfRange(f"characteristic must be < 2^31, got {p}")
    if not is_prime(p):
        raise NotPrime(f"{p} is composite")
    return FieldCtx(p, 1, None)


def make_extension(base: FieldCtx, l: int, seed: int = 0) -> FieldCtx:
    """Build F_{p^l} over a prime field by deterministic modulus search.

    Candidates x^l + (lower part) are tried in canonical index order of the
    lower coefficient vector, starting at an offset derived from ``seed``;
    identical inputs always give the identical modulus.
    """
    if base.l != 1:
        raise OutOfRange("extension base must be a prime field")
    if l < 1:
        raise OutOfRange(f"extension degree must be >= 1, got {l}")
    if l > _MAX_EXT_DEGREE:
        raise OutOfRange(f"extension degree capped at {_MAX_EXT_DEGREE}, got {l}")
    if l == 1:
        return base

    from .polynomial import Poly, is_irreducible

    p = base.p
    total = p**l
    start = seed % total
    for off in range(total):
        idx = (start + off) % total
        low = []
        rem = idx
        for _ in range(l):
            low.append(rem % p)
            rem //= p
        cand = Poly(base, low + [1])
        if is_irreducible(cand):
            return FieldCtx(p, l, tuple(low + [1]), _base=base)
    raise NotPrime("no irreducible modulus found (unreachable for prime p)")


def frobenius(a: FieldElement) -> FieldElement:
    """The p-power map a -> a^p; applying it l times is the identity."""
    return FieldElement(a.ctx, a.ctx.frob(a.raw))


def in_prime_subfield(a: FieldElement) -> bool:
    """True iff a is fixed by Frobenius, i.e. lies in F_p."""
    return a.ctx.frob(a.raw) == a.raw


def to_prime_subfield(a: FieldElement) -> FieldElement:
    """Express a prime-subfield element of an extension as an F_p element."""
    if a.ctx.l == 1:
        return a
    if not in_prime_subfield(a):
        raise OutOfRange(f"{a!r} is not in the prime subfield")
    return FieldElement(a.ctx.prime_field(), a.raw[0])
