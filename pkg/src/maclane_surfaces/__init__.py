"""Exact-arithmetic toolkit for quotient singularities on arithmetic surfaces.

Builds the affine chart of a wild cyclic quotient singularity from Eisenstein
data, verifies its determinantal presentation symbolically, replays an explicit
desingularization by a Tjurina modification followed by point blow-ups, and
computes the dual graph of the exceptional locus together with multiplicities
and self-intersection numbers.  All arithmetic is exact (rationals, p-adic
valuations, small finite fields); there is no floating point anywhere.
"""

from .arith import ExtVal, INF, padic_val, FFContext, FFElem
from .poly import (
    UniPoly,
    MultiPoly,
    RatFunc,
    phi_expand,
    resultant,
    substitute,
    linear_part_at,
    parse_univariate,
    parse_ratfunc,
)
from .valuation import (
    InductiveValuation,
    gauss,
    augment,
    evaluate,
    evaluate_rat,
    ramification_index,
    compare_on,
    parse_valuation,
)
from .quotchart import (
    WildQuotData,
    ChartPresentation,
    BreakResult,
    check_eisenstein,
    compute_break,
    chart_generators,
    presentation_matrix,
    verify_relations,
    model_valuation,
    closed_form_val,
    triple_point_data,
)

__all__ = [name for name in dir() if not name.startswith("_")]
