"""Determinantal chart of a wild cyclic quotient singularity.

Input data is an Eisenstein polynomial phi of prime degree p together with a
ramification break m >= 2.  The affine chart of the quotient model is
generated inside Q(x) by

    x_i = pi^m * x^i / phi,   i = 0, ..., p-1,   pi = constant term of phi,

and the ideal of relations is generated by the 2x2 minors of the (p x 2)
matrix with rows (X_i, X_{i+1}) and last row (X_{p-1}, Z) where

    Z = pi^m - sum_i a_i X_i,   phi = x^p + sum_i a_i x^i.

Substituting the generator functions into Z yields pi^m x^p / phi, so all
minors vanish identically; the constructor verifies this symbolically and
refuses inconsistent data.  The module also provides the model valuation
[v(x) = 1/p, v(phi) = m], a closed-form evaluation of that valuation on the
chart algebra, and the break computation from the discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import ExtVal, RatLike, _frac, check_prime, padic_val, rat_to_str
from .poly import MultiPoly, RatFunc, UniPoly, parse_univariate, resultant
from .valuation import InductiveValuation, augment, gauss


class EisensteinError(ValueError):
    """Raised with the list of violated Eisenstein conditions."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def check_eisenstein(phi: UniPoly, p: int) -> None:
    """Check monicity and the Eisenstein conditions of phi at the prime p."""
    check_prime(p)
    problems = []
    if phi.is_zero or phi.degree < 1:
        raise EisensteinError(["polynomial must be nonconstant"])
    if not phi.is_monic:
        problems.append("polynomial is not monic")
    deg = int(phi.degree)
    for i in range(deg):
        v = padic_val(phi.coeff(i), p)
        if v < 1:
            problems.append(f"coefficient of degree {i} has {p}-adic valuation {v}, needs >= 1")
    v0 = padic_val(phi.coeff(0), p)
    if not v0 == 1:
        problems.append(f"constant coefficient has {p}-adic valuation {v0}, needs exactly 1")
    if problems:
        raise EisensteinError(problems)


@dataclass(frozen=True)
class BreakResult:
    """Discriminant-based break: v_p(res(phi, phi')) / (p - 1).

    ``integral`` is False when the value is not a positive integer, which
    signals that the degree-p extension is not cyclic with a single
    ramification break; the value is still reported.
    """

    value: Fraction
    integral: bool

    def as_break(self) -> int:
        if not self.integral:
            raise ValueError(f"computed break {self.value} is not a positive integer")
        return int(self.value)


def compute_break(phi: UniPoly, p: int) -> BreakResult:
    check_eisenstein(phi, p)
    disc_val = padic_val(resultant(phi, phi.derivative()), p)
    value = disc_val.value / (p - 1)
    return BreakResult(value, value.denominator == 1 and value >= 1)


@dataclass(frozen=True)
class WildQuotData:
    """Validated chart data: prime p, Eisenstein phi of degree p, break m."""

    p: int
    phi: UniPoly
    m: int
    pi: Fraction = field(init=False)
    coeffs: tuple[Fraction, ...] = field(init=False)

    def __post_init__(self):
        check_prime(self.p)
        check_eisenstein(self.phi, self.p)
        if int(self.phi.degree) != self.p:
            raise ValueError(f"polynomial degree {int(self.phi.degree)} differs from the prime {self.p}")
        if not (isinstance(self.m, int) and self.m >= 2):
            raise ValueError(f"break must be an integer >= 2, got {self.m}")
        object.__setattr__(self, "pi", self.phi.coeff(0))
        object.__setattr__(self, "coeffs", tuple(self.phi.coeff(i) for i in range(self.p)))

    @property
    def var(self) -> str:
        return self.phi.var

    def chart_variables(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(self.p))


def triple_point_data() -> WildQuotData:
    """The built-in worked instance: p = 3, phi = x^3 - 3x^2 + 3, m = 2."""
    return WildQuotData(3, parse_univariate("x^3 - 3*x^2 + 3"), 2)


def chart_generators(data: WildQuotData) -> list[RatFunc]:
    """The functions pi^m * x^i / phi for i = 0..p-1, as reduced fractions."""
    x = UniPoly.x(data.var)
    scale = UniPoly.const(data.pi**data.m, data.var)
    return [RatFunc(scale * x**i, data.phi) for i in range(data.p)]


def z_function(data: WildQuotData) -> RatFunc:
    """pi^m - sum a_i x_i as an element of Q(x); equals pi^m x^p / phi."""
    gens = chart_generators(data)
    acc = RatFunc.of(data.pi**data.m, data.var)
    for a, g in zip(data.coeffs, gens):
        acc = acc - RatFunc.of(a, data.var) * g
    return acc


@dataclass(frozen=True)
class ChartPresentation:
    data: WildQuotData
    variables: tuple[str, ...]
    matrix: tuple[tuple[MultiPoly, MultiPoly], ...]
    minors: tuple[MultiPoly, ...]
    generators: tuple[RatFunc, ...]
    z: RatFunc

    def z_entry(self) -> MultiPoly:
        return self.matrix[-1][1]


def _build_matrix(data: WildQuotData) -> tuple[tuple[tuple[MultiPoly, MultiPoly], ...], tuple[MultiPoly, ...]]:
    names = data.chart_variables()
    xs = [MultiPoly.var(n, names) for n in names]
    z = MultiPoly.const(data.pi**data.m, names)
    for a, xv in zip(data.coeffs, xs):
        z = z - MultiPoly.const(a, names) * xv
    rows = [(xs[i], xs[i + 1]) for i in range(data.p - 1)]
    rows.append((xs[data.p - 1], z))
    minors = []
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            minors.append(rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1])
    return tuple(rows), tuple(minors)


def _substitute_generators(minor: MultiPoly, data: WildQuotData) -> RatFunc:
    gens = chart_generators(data)
    values = {f"x{i}": g for i, g in enumerate(gens)}
    return minor.evaluate(values, from_fraction=lambda c: RatFunc.of(c, data.var))


def presentation_matrix(data: WildQuotData) -> ChartPresentation:
    """Build the (p x 2) presentation matrix and verify every minor vanishes."""
    rows, minors = _build_matrix(data)
    gens = tuple(chart_generators(data))
    z = z_function(data)
    for minor in minors:
        residual = _substitute_generators(minor, data)
        if not residual.is_zero:
            raise ValueError(f"presentation minor {minor} does not vanish: residual {residual}")
    return ChartPresentation(data, data.chart_variables(), rows, minors, gens, z)


@dataclass(frozen=True)
class RelationReport:
    ok: bool
    residuals: tuple[tuple[str, RatFunc], ...]  # (minor string, substituted value)

    def failures(self):
        return [(m, r) for m, r in self.residuals if not r.is_zero]


def verify_relations(data: WildQuotData, minors=None) -> RelationReport:
    """Substitute the generator functions into every minor and report results."""
    if minors is None:
        _, minors = _build_matrix(data)
    residuals = []
    ok = True
    for minor in minors:
        residual = _substitute_generators(minor, data)
        residuals.append((str(minor), residual))
        ok = ok and residual.is_zero
    return RelationReport(ok, tuple(residuals))


def model_valuation(data: WildQuotData) -> InductiveValuation:
    """The valuation [v(x) = 1/p, v(phi) = m] describing the quotient model."""
    v = augment(gauss(data.p), UniPoly.x(data.var), Fraction(1, data.p))
    return augment(v, data.phi, Fraction(data.m))


@dataclass(frozen=True)
class ChartCoords:
    """f = c0 + sum_{i<r} sum_{j<p} c[i][j] * x^j * phi^(i-r) on the chart."""

    c0: Fraction
    c: tuple[tuple[Fraction, ...], ...]
    r: int

    @staticmethod
    def make(c0: RatLike, rows, r: int) -> "ChartCoords":
        rows = tuple(tuple(_frac(x) for x in row) for row in rows)
        if rows and r < 1:
            raise ValueError("r must be >= 1 when coefficient rows are present")
        if len(rows) > r:
            raise ValueError("more coefficient rows than r")
        return ChartCoords(_frac(c0), rows, r)

    def as_ratfunc(self, data: WildQuotData) -> RatFunc:
        x = UniPoly.x(data.var)
        num = UniPoly.const(self.c0, data.var) * data.phi**self.r
        for i, row in enumerate(self.c):
            for j, cij in enumerate(row):
                if cij:
                    num = num + UniPoly.const(cij, data.var) * x**j * data.phi**i
        return RatFunc(num, data.phi**self.r)


def closed_form_val(data: WildQuotData, coords: ChartCoords) -> ExtVal:
    """min( v_p(c0), v_p(c_ij) + j/p - m(r-i) ), the model valuation in coordinates."""
    candidates = [padic_val(coords.c0, data.p)]
    for i, row in enumerate(coords.c):
        if len(row) > data.p:
            raise ValueError("coefficient row longer than p")
        for j, cij in enumerate(row):
            if cij == 0:
                continue
            v = padic_val(cij, data.p)
            candidates.append(v + Fraction(j, data.p) - data.m * (coords.r - i))
    return min(candidates)


def presentation_json(pres: ChartPresentation, break_result: BreakResult | None = None) -> dict:
    data = pres.data
    out = {
        "schema": "maclane-surfaces/v1",
        "p": data.p,
        "phi": str(data.phi),
        "m": data.m,
        "pi_K": rat_to_str(data.pi),
        "variables": list(pres.variables),
        "matrix": [[str(a), str(b)] for a, b in pres.matrix],
        "minors": [str(m) for m in pres.minors],
        "generators": [str(g) for g in pres.generators],
        "z": str(pres.z),
    }
    if break_result is not None:
        out["computed_break"] = {
            "value": rat_to_str(break_result.value),
            "integral": break_result.integral,
        }
    return out
