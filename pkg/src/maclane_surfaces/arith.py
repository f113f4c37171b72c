"""Arbitrary-precision rationals, p-adic valuations on Q, small finite fields.

Rational numbers are ``fractions.Fraction`` (always reduced, denominator > 0);
this module adds the extended value ``ExtVal`` living in Q together with +oo,
the p-adic valuation, and arithmetic in F_{p^k} for small k (point enumeration
on special fibers).  Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


RatLike = Fraction | int


def _frac(q: RatLike) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def rat_to_str(q: RatLike) -> str:
    """Canonical decimal-free string: "num" or "num/den"."""
    return str(_frac(q))


def rat_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    return p


@total_ordering
@dataclass(frozen=True)
class ExtVal:
    """Element of Q together with +oo, totally ordered with oo maximal.

    oo + x = oo and oo - finite = oo; finite - oo is an error (it would signal
    a division by zero upstream and must fail loudly).
    """

    finite: Fraction | None  # None encodes +oo

    @staticmethod
    def of(q: RatLike) -> "ExtVal":
        return ExtVal(_frac(q))

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    @property
    def value(self) -> Fraction:
        if self.finite is None:
            raise ValueError("infinite value has no finite part")
        return self.finite

    def __add__(self, other: "ExtVal | RatLike") -> "ExtVal":
        other = other if isinstance(other, ExtVal) else ExtVal.of(other)
        if self.finite is None or other.finite is None:
            return INF
        return ExtVal(self.finite + other.finite)

    __radd__ = __add__

    def __sub__(self, other: "ExtVal | RatLike") -> "ExtVal":
        other = other if isinstance(other, ExtVal) else ExtVal.of(other)
        if other.finite is None:
            if self.finite is None:
                raise ValueError("oo - oo is undefined")
            raise ValueError("finite - oo is undefined (division by zero upstream)")
        if self.finite is None:
            return INF
        return ExtVal(self.finite - other.finite)

    def __lt__(self, other: "ExtVal | RatLike") -> bool:
        other = other if isinstance(other, ExtVal) else ExtVal.of(other)
        if self.finite is None:
            return False
        if other.finite is None:
            return True
        return self.finite < other.finite

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExtVal.of(other)
        if not isinstance(other, ExtVal):
            return NotImplemented
        return self.finite == other.finite

    def __hash__(self) -> int:
        return hash(self.finite)

    def __str__(self) -> str:
        return "inf" if self.finite is None else rat_to_str(self.finite)

    def __repr__(self) -> str:
        return f"ExtVal({self})"


INF = ExtVal(None)


def extval_from_str(s: str) -> ExtVal:
    s = s.strip()
    return INF if s == "inf" else ExtVal.of(Fraction(s))


def padic_val(q: RatLike, p: int) -> ExtVal:
    """Exponent of the prime p in the rational q; padic_val(0, p) = oo."""
    check_prime(p)
    q = _frac(q)
    if q == 0:
        return INF
    v = 0
    n = abs(q.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return ExtVal.of(v)


# ---------------------------------------------------------------------------
# Finite fields F_{p^k}, k <= 4
# ---------------------------------------------------------------------------

MAX_FF_DEGREE = 4


def _poly_mod_p(coeffs: tuple[int, ...], p: int) -> tuple[int, ...]:
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul_mod_p(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod_p(tuple(out), p)


def _poly_divmod_mod_p(a: tuple[int, ...], b: tuple[int, ...], p: int):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], p - 2, p)
    while len(rem) >= len(b):
        c = rem[-1] * inv_lead % p
        d = len(rem) - len(b)
        quo[d] = c
        for i, y in enumerate(b):
            rem[d + i] = (rem[d + i] - c * y) % p
        while rem and rem[-1] == 0:
            rem.pop()
    return _poly_mod_p(tuple(quo), p), _poly_mod_p(tuple(rem), p)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        # enumerate monic polys of degree d: coefficients c_0..c_{d-1}
        for code in range(p**d):
            rest, cs = code, []
            for _ in range(d):
                cs.append(rest % p)
                rest //= p
            cand = tuple(cs) + (1,)
            _, rem = _poly_divmod_mod_p(poly, cand, p)
            if not rem:
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        rest, cs = code, []
        for _ in range(k):
            cs.append(rest % p)
            rest //= p
        cand = tuple(cs) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FFContext:
    """The field F_{p^k} presented as F_p[t]/(modulus)."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @staticmethod
    def make(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> "FFContext":
        check_prime(p)
        if not 1 <= k <= MAX_FF_DEGREE:
            raise ValueError(f"extension degree {k} outside supported range 1..{MAX_FF_DEGREE}")
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if k > 1 and not _is_irreducible(modulus, p):
            raise ValueError("modulus is not irreducible over F_p")
        return FFContext(p, k, modulus)

    @property
    def order(self) -> int:
        return self.p**self.k

    def element(self, coeffs) -> "FFElem":
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        c = [x % self.p for x in coeffs]
        if len(c) > self.k:
            _, rem = _poly_divmod_mod_p(tuple(c), self.modulus, self.p)
            c = list(rem)
        c = (c + [0] * self.k)[: self.k]
        return FFElem(self, tuple(c))

    def zero(self) -> "FFElem":
        return self.element(0)

    def one(self) -> "FFElem":
        return self.element(1)

    def gen(self) -> "FFElem":
        return self.element((0, 1))

    def from_fraction(self, q: RatLike) -> "FFElem":
        q = _frac(q)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator of {q} not invertible mod {self.p}")
        num = self.element(q.numerator % self.p)
        den = self.element(q.denominator % self.p)
        return num * den.inv()

    def elements(self):
        for code in range(self.order):
            rest, cs = code, []
            for _ in range(self.k):
                cs.append(rest % self.p)
                rest //= self.p
            yield FFElem(self, tuple(cs))


@dataclass(frozen=True)
class FFElem:
    """Residue in F_{p^k}; coefficient vector of length k in 0..p-1."""

    ctx: FFContext
    coeffs: tuple[int, ...]

    def _check(self, other: "FFElem") -> None:
        if self.ctx != other.ctx:
            raise ValueError("finite-field elements from different contexts")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "FFElem") -> "FFElem":
        self._check(other)
        return FFElem(self.ctx, tuple((a + b) % self.ctx.p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FFElem") -> "FFElem":
        self._check(other)
        return FFElem(self.ctx, tuple((a - b) % self.ctx.p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FFElem":
        return FFElem(self.ctx, tuple((-a) % self.ctx.p for a in self.coeffs))

    def __mul__(self, other: "FFElem") -> "FFElem":
        self._check(other)
        prod = _poly_mul_mod_p(_poly_mod_p(self.coeffs, self.ctx.p), _poly_mod_p(other.coeffs, self.ctx.p), self.ctx.p)
        _, rem = _poly_divmod_mod_p(prod, self.ctx.modulus, self.ctx.p)
        return self.ctx.element(rem)

    def inv(self) -> "FFElem":
        if self.is_zero:
            raise ZeroDivisionError("inversion of zero in a finite field")
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other: "FFElem") -> "FFElem":
        return self * other.inv()

    def __pow__(self, n: int) -> "FFElem":
        if n < 0:
            return self.inv() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "FFElem":
        return self**self.ctx.p

    def lift(self) -> tuple[int, ...]:
        """Integer representative coefficients (0..p-1)."""
        return self.coeffs

    def lift_int(self) -> int:
        if self.ctx.k != 1 and any(self.coeffs[1:]):
            raise ValueError("element not in the prime field")
        return self.coeffs[0]

    def __str__(self) -> str:
        if self.ctx.k == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(t if c == 1 else f"{c}*{t}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"FF({self}, p={self.ctx.p}, k={self.ctx.k})"
