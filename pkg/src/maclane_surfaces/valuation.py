"""Inductive valuations on Q(x) extending the p-adic valuation.

A valuation is built from the Gauss valuation by a chain of augmentations
``[v, v'(phi) = lam]`` with monic integral key polynomials phi and rational
values lam.  Evaluation proceeds by recursive phi-adic expansion down the
augmentation chain:

    v_n(f) = min_i ( v_{n-1}(f_i) + i * lam_n )   where  f = sum f_i phi_n^i.

Only the necessary augmentation conditions are checked (lam strictly above
the previous value of phi, monic p-integral phi, degree divisibility along
the chain).  Whether phi is a genuine key polynomial in the full sense of
MacLane's theory is NOT decided here; the classical definition requires the
graded-reduction machinery that this desk-scale engine deliberately omits.
Callers feeding non-key augmentations get a function that may fail to be a
valuation; all chains used by this package are genuine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .arith import ExtVal, INF, RatLike, _frac, check_prime, padic_val, rat_to_str
from .poly import RatFunc, UniPoly, parse_univariate, phi_expand


@dataclass(frozen=True)
class AugmentationStep:
    phi: UniPoly
    lam: Fraction


@dataclass(frozen=True)
class InductiveValuation:
    """Gauss valuation for the prime p plus a chain of augmentation steps."""

    p: int
    steps: tuple[AugmentationStep, ...] = ()

    @property
    def is_gauss(self) -> bool:
        return not self.steps

    def last_key_degree(self) -> int:
        return 1 if not self.steps else int(self.steps[-1].phi.degree)

    def value(self, f: UniPoly) -> ExtVal:
        return _eval_chain(self.p, self.steps, f)

    def value_rat(self, f: RatFunc) -> ExtVal:
        if f.is_zero:
            return INF
        return self.value(f.num) - self.value(f.den)

    def __str__(self) -> str:
        parts = [f"v0({self.p})"]
        for s in self.steps:
            parts.append(f"v({s.phi})={rat_to_str(s.lam)}")
        return "[" + ", ".join(parts) + "]"

    def __repr__(self) -> str:
        return f"InductiveValuation({self})"


def gauss(p: int) -> InductiveValuation:
    """Gauss valuation with respect to x: min of p-adic coefficient values."""
    check_prime(p)
    return InductiveValuation(p)


def _eval_chain(p: int, steps: tuple[AugmentationStep, ...], f: UniPoly) -> ExtVal:
    if f.is_zero:
        return INF
    if not steps:
        best: ExtVal | None = None
        for c in f.coeffs:
            if c == 0:
                continue
            v = padic_val(c, p)
            if best is None or v < best:
                best = v
        return best if best is not None else INF
    head, lam = steps[-1].phi, steps[-1].lam
    best = None
    for i, piece in enumerate(phi_expand(f, head)):
        if piece.is_zero:
            continue
        v = _eval_chain(p, steps[:-1], piece) + i * lam
        if best is None or v < best:
            best = v
    return best if best is not None else INF


def evaluate(v: InductiveValuation, f: UniPoly) -> ExtVal:
    return v.value(f)


def evaluate_rat(v: InductiveValuation, f: RatFunc) -> ExtVal:
    return v.value_rat(f)


def augment(v: InductiveValuation, phi: UniPoly, lam: RatLike) -> InductiveValuation:
    """Augmented valuation [v, v'(phi) = lam]; enforces necessary conditions."""
    lam = _frac(lam)
    if phi.is_zero or phi.degree < 1:
        raise ValueError("key polynomial must have degree >= 1")
    if not phi.is_monic:
        raise ValueError("key polynomial must be monic")
    for c in phi.coeffs:
        if padic_val(c, v.p) < 0:
            raise ValueError(f"key polynomial has a non-p-integral coefficient: {c}")
    d_prev = v.last_key_degree()
    if int(phi.degree) % d_prev != 0:
        raise ValueError(
            f"key degree {int(phi.degree)} is not a multiple of the previous key degree {d_prev}"
        )
    prev = v.value(phi)
    if not ExtVal.of(lam) > prev:
        raise ValueError(f"augmentation value {lam} is not above the current value {prev} of phi")
    return InductiveValuation(v.p, v.steps + (AugmentationStep(phi, lam),))


def ramification_index(v: InductiveValuation) -> int:
    """Smallest e >= 1 with e * (value group) inside Z: lcm of lam denominators."""
    dens = [s.lam.denominator for s in v.steps]
    return lcm(1, *dens)


def compare_on(v1: InductiveValuation, v2: InductiveValuation, samples) -> UniPoly | None:
    """First sample polynomial on which the two valuations disagree, else None.

    Agreement on a sample set is evidence, never a proof of equality; two
    different chains can present the same valuation.
    """
    for f in samples:
        if v1.value(f) != v2.value(f):
            return f
    return None


def parse_valuation(text: str, var: str = "x") -> InductiveValuation:
    """Parse the textual form "[v0(3), v(x)=1/3, v(x^3-3*x^2+3)=2]"."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError("valuation string must be bracketed")
    parts = _split_top_level(s[1:-1])
    if not parts:
        raise ValueError("empty valuation string")
    head = parts[0].strip()
    if not (head.startswith("v0(") and head.endswith(")")):
        raise ValueError("valuation string must start with v0(p)")
    v = gauss(int(head[3:-1]))
    for part in parts[1:]:
        part = part.strip()
        if not part.startswith("v("):
            raise ValueError(f"bad augmentation step: {part!r}")
        close = _matching_paren(part, 1)
        phi = parse_univariate(part[2:close], var)
        rhs = part[close + 1 :].strip()
        if not rhs.startswith("="):
            raise ValueError(f"bad augmentation step: {part!r}")
        v = augment(v, phi, Fraction(rhs[1:].strip()))
    return v


def _split_top_level(s: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(s[start:i])
            start = i + 1
    tail = s[start:].strip()
    if tail:
        parts.append(tail)
    return parts


def _matching_paren(s: str, open_pos: int) -> int:
    depth = 0
    for i in range(open_pos, len(s)):
        if s[i] == "(":
            depth += 1
        elif s[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ValueError("unbalanced parentheses")
