"""Exact univariate and sparse multivariate polynomials over Q.

``UniPoly`` is dense in one variable, ``MultiPoly`` is a sparse exponent-map
over an ordered variable tuple, ``RatFunc`` is a normalized quotient of
univariate polynomials (monic denominator, coprime).  On top of the ring
arithmetic the module provides the phi-adic expansion used by inductive
valuations, resultants via the fraction-free subresultant remainder sequence,
substitution homomorphisms and exact linear parts at lifted points.

Human-readable syntax like ``"s^3*x - 3*s^2*x + 3*x + 9"`` is parsed and
emitted; the round trip is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .arith import RatLike, _frac, rat_to_str

NEG_INF = float("-inf")  # degree of the zero polynomial


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense polynomial in one named variable with Fraction coefficients."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs=()):
        self.var = var
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(var: str = "x") -> "UniPoly":
        return UniPoly(var, ())

    @staticmethod
    def const(c: RatLike, var: str = "x") -> "UniPoly":
        return UniPoly(var, (c,))

    @staticmethod
    def x(var: str = "x") -> "UniPoly":
        return UniPoly(var, (0, 1))

    @staticmethod
    def monomial(c: RatLike, n: int, var: str = "x") -> "UniPoly":
        return UniPoly(var, (0,) * n + (_frac(c),))

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return NEG_INF if not self.coeffs else len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def _same_var(self, other: "UniPoly") -> str:
        if self.var != other.var and self.coeffs and other.coeffs and (self.degree > 0 and other.degree > 0):
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        return self.var if self.degree > 0 or not other.coeffs else other.var

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other, self.var)

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        var = self._same_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(var, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = self._coerce(other)
        var = self._same_var(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(var, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        var = self._same_var(other)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(var), self
        quo = [Fraction(0)] * (dq + 1)
        inv_lead = 1 / other.lead
        while len(rem) >= len(other.coeffs):
            c = rem[-1] * inv_lead
            d = len(rem) - len(other.coeffs)
            quo[d] = c
            for i, b in enumerate(other.coeffs):
                rem[d + i] -= c * b
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(var, tuple(quo)), UniPoly(var, tuple(rem))

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * (1 / self.lead)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def derivative(self) -> "UniPoly":
        return UniPoly(self.var, tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def shift(self, n: int) -> "UniPoly":
        """Multiply by var**n."""
        if self.is_zero:
            return self
        return UniPoly(self.var, (0,) * n + self.coeffs)

    def __call__(self, value):
        """Horner evaluation; value may be Fraction, UniPoly, RatFunc, ..."""
        if not self.coeffs:
            return value * 0
        acc = value * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def content_and_primitive(self) -> tuple[Fraction, tuple[int, ...]]:
        """Write self = content * P with P integral, primitive, positive lead."""
        if self.is_zero:
            return Fraction(0), ()
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), tuple(c // g for c in ints)

    # -- comparison / printing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other, self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.degree <= 0 or other.degree <= 0 or self.var == other.var)

    def __hash__(self) -> int:
        return hash((self.var if self.degree > 0 else "", self.coeffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if c == 0:
                continue
            if n == 0:
                body = rat_to_str(abs(c))
            else:
                xpow = self.var if n == 1 else f"{self.var}^{n}"
                body = xpow if abs(c) == 1 else f"{rat_to_str(abs(c))}*{xpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def phi_expand(f: UniPoly, phi: UniPoly) -> list[UniPoly]:
    """Coefficients [f_0, ..., f_r] with f = sum f_i * phi^i, deg f_i < deg phi."""
    if phi.is_zero or phi.degree < 1:
        raise ValueError("expansion modulus must have degree >= 1")
    if not phi.is_monic:
        raise ValueError("expansion modulus must be monic")
    if f.is_zero:
        return [f]
    out = []
    rest = f
    while not rest.is_zero:
        rest, r = rest.divmod(phi)
        out.append(r)
    return out


def _int_poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (asserts exactness)."""
    out = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    while len(rem) >= len(b):
        assert rem[-1] % b[-1] == 0, "inexact division in subresultant PRS"
        c = rem[-1] // b[-1]
        d = len(rem) - len(b)
        out[d] = c
        for i, y in enumerate(b):
            rem[d + i] -= c * y
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    assert not rem, "inexact division in subresultant PRS"
    return out


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    rem = list(a)
    lb = b[-1]
    steps = len(a) - len(b) + 1
    done = 0
    while len(rem) >= len(b):
        rem = [c * lb for c in rem]
        done += 1
        c = rem[-1] // lb
        d = len(rem) - len(b)
        for i, y in enumerate(b):
            rem[d + i] -= c * y
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    scale = lb ** (steps - done)
    return [c * scale for c in rem]


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Resultant of f and g (Sylvester determinant), by subresultant PRS."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    m, n = f.degree, g.degree
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    cf, A = f.content_and_primitive()
    cg, B = g.content_and_primitive()
    scale = cf**n * cg**m
    A, B = list(A), list(B)
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
        A, B = B, A
    g_, h_ = 1, 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _int_prem(A, B)
        A = B
        if not R:
            return Fraction(0)
        B = _int_poly_divexact(R, [g_ * h_**delta])
        g_ = A[-1]
        if delta >= 1:
            # h <- g^delta / h^(delta-1), exact in Z
            num = g_**delta
            den = h_ ** (delta - 1)
            assert num % den == 0
            h_ = num // den
        else:
            h_ = h_  # delta == 0 cannot occur for a strictly decreasing PRS
        if len(B) - 1 <= 0:
            break
    if not B:
        return Fraction(0)
    da = len(A) - 1
    lead = B[-1]
    num = lead**da
    den = h_ ** (da - 1)
    assert num % den == 0
    res = s * (num // den)
    return scale * res


def sylvester_resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Independent oracle: determinant of the Sylvester matrix over Q."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    m, n = int(f.degree), int(g.degree)
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + [c for c in fc] + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + [c for c in gc] + [Fraction(0)] * (size - n - 1 - i))
    # exact Gaussian elimination
    det = Fraction(1)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] == 0:
                continue
            factor = rows[r][col] * inv
            for c in range(col, size):
                rows[r][c] -= factor * rows[col][c]
    return det


# ---------------------------------------------------------------------------
# Rational functions in one variable
# ---------------------------------------------------------------------------


class RatFunc:
    """Quotient of univariate polynomials; denominator monic, gcd divided out."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        if den is None:
            den = UniPoly.const(1, num.var)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = UniPoly.const(1, den.var)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.lead
            if lead != 1:
                num = num * (1 / lead)
                den = den * (1 / lead)
        self.num = num
        self.den = den

    @staticmethod
    def of(p: UniPoly | RatLike, var: str = "x") -> "RatFunc":
        if isinstance(p, RatFunc):
            return p
        if isinstance(p, UniPoly):
            return RatFunc(p)
        return RatFunc(UniPoly.const(p, var))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def var(self) -> str:
        return self.num.var if self.num.degree > 0 else self.den.var

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc.of(other, self.var)

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, UniPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den == UniPoly.const(1, self.den.var):
            return str(self.num)
        ns = str(self.num)
        ds = str(self.den)
        if self.num.degree > 0 or (self.num.coeffs and self.num.coeffs[0] < 0):
            ns = f"({ns})"
        if self.den.degree > 0:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse polynomial over an ordered variable tuple.

    Terms map exponent vectors to nonzero Fraction coefficients.  The graded
    lexicographic order on the declared variables fixes canonical printing
    only; no term-order-dependent algorithms live here.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms=None):
        self.vars = tuple(vars)
        clean = {}
        for exps, c in (terms or {}).items():
            c = _frac(c)
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars):
                raise ValueError("exponent vector has wrong length")
            clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(vars: tuple[str, ...]) -> "MultiPoly":
        return MultiPoly(vars, {})

    @staticmethod
    def const(c: RatLike, vars: tuple[str, ...]) -> "MultiPoly":
        return MultiPoly(vars, {tuple(0 for _ in vars): _frac(c)})

    @staticmethod
    def var(name: str, vars: tuple[str, ...]) -> "MultiPoly":
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"{name} is not among the variables {vars}")
        return MultiPoly(vars, {exps: Fraction(1)})

    @staticmethod
    def from_unipoly(f: UniPoly, vars: tuple[str, ...]) -> "MultiPoly":
        x = MultiPoly.var(f.var, vars)
        acc = MultiPoly.zero(vars)
        for n, c in enumerate(f.coeffs):
            if c:
                acc = acc + MultiPoly.const(c, vars) * x**n
        return acc

    # -- structure ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values())) if self.terms else Fraction(0)

    @property
    def total_degree(self):
        return NEG_INF if not self.terms else max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return 0 if not self.terms else max(e[i] for e in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def lead_coeff_grlex(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial")
        return self.sorted_terms()[0][1]

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable tuples differ: {self.vars} vs {other.vars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other, self.vars)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus / evaluation ----------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
            out[e2] = out.get(e2, Fraction(0)) + c * e[i]
        return MultiPoly(self.vars, out)

    def evaluate(self, values: dict, from_fraction=None):
        """Evaluate with values from any commutative ring.

        ``values`` maps every variable name to a ring element; coefficients
        enter through ``from_fraction`` (defaults to the identity, suitable
        for Fraction evaluation).
        """
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"no value for variables {missing}")
        conv = from_fraction or (lambda c: c)
        acc = None
        for e, c in self.sorted_terms():
            term = conv(c)
            for name, exp in zip(self.vars, e):
                if exp:
                    term = term * values[name] ** exp
            acc = term if acc is None else acc + term
        if acc is None:
            acc = conv(Fraction(0))
        return acc

    def rename(self, mapping: dict[str, str], new_vars: tuple[str, ...]) -> "MultiPoly":
        pos: dict[str, int | None] = {}
        for v in self.vars:
            tgt = mapping.get(v, v)
            pos[v] = new_vars.index(tgt) if tgt in new_vars else None
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * len(new_vars)
            for v, exp in zip(self.vars, e):
                if exp:
                    if pos[v] is None:
                        raise ValueError(f"variable {v} occurs but has no target")
                    e2[pos[v]] += exp
            key = tuple(e2)
            out[key] = out.get(key, Fraction(0)) + c
        return MultiPoly(new_vars, out)

    def restrict(self, vars: tuple[str, ...]) -> "MultiPoly":
        """Re-declare over a sub-tuple of variables (others must not occur)."""
        for v in self.vars:
            if v not in vars and self.degree_in(v) > 0:
                raise ValueError(f"variable {v} still occurs")
        return self.rename({}, vars)

    def divides_test(self, divisor: "MultiPoly") -> bool:
        return self.try_exact_div(divisor) is not None

    def try_exact_div(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Exact multivariate division by a single divisor, or None."""
        self._check(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError
        rem = self
        quo = MultiPoly.zero(self.vars)
        lt_e, lt_c = divisor.sorted_terms()[0]
        while not rem.is_zero:
            e, c = rem.sorted_terms()[0]
            diff = tuple(a - b for a, b in zip(e, lt_e))
            if any(d < 0 for d in diff):
                return None
            t = MultiPoly(self.vars, {diff: c / lt_c})
            quo = quo + t
            rem = rem - t * divisor
        return quo

    # -- printing ---------------------------------------------------------------

    def _term_str(self, e: tuple[int, ...], c: Fraction) -> str:
        factors = []
        for name, exp in zip(self.vars, e):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        if not factors:
            return rat_to_str(abs(c))
        body = "*".join(factors)
        if abs(c) == 1:
            return body
        return f"{rat_to_str(abs(c))}*{body}"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            body = self._term_str(e, c)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def substitute(f: MultiPoly, mapping: dict[str, MultiPoly]) -> MultiPoly:
    """Ring homomorphism sending each variable of f to its image."""
    missing = [v for v in f.vars if v not in mapping]
    if missing:
        raise ValueError(f"substitution map misses variables {missing}")
    targets = {img.vars for img in mapping.values()}
    if len(targets) != 1:
        raise ValueError("substitution images must share one variable tuple")
    (tvars,) = targets
    return f.evaluate(mapping, from_fraction=lambda c: MultiPoly.const(c, tvars))


def linear_part_at(f: MultiPoly, point) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact value and gradient of f at an integer/rational lift of a point."""
    if len(point) != len(f.vars):
        raise ValueError("point dimension does not match the variable count")
    values = {v: _frac(a) for v, a in zip(f.vars, point)}
    const = f.evaluate(values, from_fraction=lambda c: c)
    grads = tuple(f.derivative(v).evaluate(values, from_fraction=lambda c: c) for v in f.vars)
    return const, grads


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks: list[tuple[str, str, int]] = []
        self._lex()
        self.i = 0

    def _lex(self) -> None:
        s, n = self.text, len(self.text)
        i = 0
        while i < n:
            ch = s[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and s[j].isdigit():
                    j += 1
                self.toks.append(("num", s[i:j], i))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < n and (s[j].isalnum() or s[j] == "_"):
                    j += 1
                self.toks.append(("name", s[i:j], i))
                i = j
                continue
            if ch in "+-*/^()":
                self.toks.append((ch, ch, i))
                i += 1
                continue
            raise ValueError(f"unexpected character {ch!r} at position {i}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def next(self):
        t = self.peek()
        self.i += 1
        return t


class _ExprParser:
    """Recursive-descent parser for +,-,*,/,^ expressions over Q[vars]."""

    def __init__(self, text: str, vars: tuple[str, ...]):
        self.toks = _Tokens(text)
        self.vars = vars

    def parse(self):
        val = self._expr()
        kind, _, pos = self.toks.peek()
        if kind != "end":
            raise ValueError(f"trailing input at position {pos}")
        return val

    def _expr(self):
        kind, _, _ = self.toks.peek()
        neg = False
        if kind in ("+", "-"):
            self.toks.next()
            neg = kind == "-"
        val = self._term()
        if neg:
            val = [(-c, num, den) for (c, num, den) in val]
        while True:
            kind, _, _ = self.toks.peek()
            if kind not in ("+", "-"):
                return val
            self.toks.next()
            rhs = self._term()
            if kind == "-":
                rhs = [(-c, num, den) for (c, num, den) in rhs]
            val = val + rhs

    def _term(self):
        val = self._factor()
        while True:
            kind, _, _ = self.toks.peek()
            if kind == "*":
                self.toks.next()
                val = self._mul(val, self._factor())
            elif kind == "/":
                self.toks.next()
                val = self._div(val, self._factor())
            else:
                return val

    def _factor(self):
        base = self._base()
        kind, _, _ = self.toks.peek()
        if kind == "^":
            self.toks.next()
            k2, text, pos = self.toks.next()
            if k2 != "num":
                raise ValueError(f"exponent expected at position {pos}")
            n = int(text)
            out = [(Fraction(1), {}, {})]
            for _ in range(n):
                out = self._mul(out, base)
            return out
        return base

    def _base(self):
        kind, text, pos = self.toks.next()
        if kind == "num":
            return [(Fraction(int(text)), {}, {})]
        if kind == "name":
            if text not in self.vars:
                raise ValueError(f"unknown variable {text!r} at position {pos}")
            return [(Fraction(1), {text: 1}, {})]
        if kind == "(":
            val = self._expr()
            k2, _, pos2 = self.toks.next()
            if k2 != ")":
                raise ValueError(f"missing ')' at position {pos2}")
            return val
        if kind == "-":
            val = self._base()
            return [(-c, num, den) for (c, num, den) in val]
        raise ValueError(f"unexpected token {text!r} at position {pos}")

    # terms are lists of (coeff, num-exponent-map, den-exponent-map); the
    # denominator maps stay empty for polynomials and record divisions.
    def _mul(self, a, b):
        out = []
        for c1, n1, d1 in a:
            for c2, n2, d2 in b:
                n = dict(n1)
                for k, v in n2.items():
                    n[k] = n.get(k, 0) + v
                d = dict(d1)
                for k, v in d2.items():
                    d[k] = d.get(k, 0) + v
                out.append((c1 * c2, n, d))
        return out

    def _div(self, a, b):
        if len(b) == 1 and not b[0][1] and not b[0][2]:
            c = b[0][0]
            if c == 0:
                raise ZeroDivisionError("division by zero in expression")
            return [(x / c, n, d) for (x, n, d) in a]
        # general division: flip numerator/denominator exponent maps
        inv = [(1 / c, d, n) for (c, n, d) in b]
        if len(inv) != 1:
            raise ValueError("division by a sum is only supported for parenthesized denominators in rational functions")
        return self._mul(a, inv)


def parse_multivariate(text: str, vars: tuple[str, ...]) -> MultiPoly:
    """Parse a polynomial expression; division only by rational constants."""
    parser = _ExprParser(text, vars)
    terms = parser.parse()
    acc = MultiPoly.zero(vars)
    for c, num, den in terms:
        if den:
            raise ValueError("polynomial expression may not divide by variables")
        e = tuple(num.get(v, 0) for v in vars)
        acc = acc + MultiPoly(vars, {e: c})
    return acc


def parse_univariate(text: str, var: str = "x") -> UniPoly:
    mp = parse_multivariate(text, (var,))
    coeffs: dict[int, Fraction] = {}
    for e, c in mp.terms.items():
        coeffs[e[0]] = c
    if not coeffs:
        return UniPoly.zero(var)
    out = [Fraction(0)] * (max(coeffs) + 1)
    for n, c in coeffs.items():
        out[n] = c
    return UniPoly(var, out)


def parse_ratfunc(text: str, var: str = "x") -> RatFunc:
    """Parse a univariate rational function like "9/(x^3 - 3*x^2 + 3)"."""
    text = text.strip()
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split = i  # last top-level slash wins: a/b/c == (a/b)/c
    if split is None:
        return RatFunc(parse_univariate(text, var))
    num = parse_ratfunc(text[:split], var)
    den = parse_ratfunc(text[split + 1 :], var)
    return num / den
