"""Koszul's multilinear forms of an operator and the derived bracket.

Signs come from the bidegree pairing of the carrier algebra, so the same
code serves superfunctions, forms and multivectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from ._core import Chart
from .bv import GeneratingOperator
from .calculus import (
    Operator,
    add_bidegrees,
    bidegree_of,
    carrier_class,
    d_operator,
    derivation,
    iota_exact,
    iota_operator,
    lie_operator,
    mul_operator,
    nested_commutator_value,
    probe_monomials,
    pairing,
)
from .grassmann import GradedElement, coefficient_partial, coordinate


def _in_carrier(D: Operator, a: GradedElement) -> GradedElement:
    cls = carrier_class(D.carrier)
    if isinstance(a, cls):
        return a
    if a.kind == "function":
        return cls._raw(a.chart, dict(a.items()))
    raise TypeError(f"a {a.kind} is not an element of the {D.carrier} carrier")


def phi(D: Operator, *args: GradedElement) -> GradedElement:
    """``[[...[D, mu_a1], ...], mu_ar](1)``."""
    if not args:
        raise ValueError("phi needs at least one argument")
    args = [_in_carrier(D, a) for a in args]
    unit = carrier_class(D.carrier).constant(args[0].chart)
    return nested_commutator_value(D, args, unit)


def koszul_bracket(D: Operator, a: GradedElement, b: GradedElement) -> GradedElement:
    """``(-1)^<D, a> phi(D, a, b)``."""
    value = phi(D, a, b)
    return -value if pairing(D.bidegree, bidegree_of(a)) & 1 else value


def _sign(x, y) -> int:
    return -1 if pairing(x, y) & 1 else 1


def eq14_defect(D: Operator, a, b, c) -> GradedElement:
    """``Φ³(a,b,c) - Φ²(a,bc) + Φ²(a,b) c + (-1)^<b,c> Φ²(a,c) b``."""
    a, b, c = (_in_carrier(D, v) for v in (a, b, c))
    return (phi(D, a, b, c) - phi(D, a, b * c) + phi(D, a, b) * c
            + (phi(D, a, c) * b).scale(_sign(bidegree_of(b), bidegree_of(c))))


def eq15_defect(D: Operator, a, b) -> GradedElement:
    """``[a,b]_D + (-1)^<a-D, b+D> [b,a]_D``; zero for odd D."""
    a, b = _in_carrier(D, a), _in_carrier(D, b)
    da, db, dd = bidegree_of(a), bidegree_of(b), D.bidegree
    minus = (da[0] - dd[0], da[1] - dd[1])
    sign = _sign(minus, add_bidegrees(db, dd))
    return koszul_bracket(D, a, b) + koszul_bracket(D, b, a).scale(sign)


def eq16_defect(D: Operator, a, b, c) -> GradedElement:
    """``[a,bc]_D - [a,b]_D c - (-1)^<a+D, b> b [a,c]_D``; zero when Φ³ vanishes."""
    a, b, c = (_in_carrier(D, v) for v in (a, b, c))
    sign = _sign(add_bidegrees(bidegree_of(a), D.bidegree), bidegree_of(b))
    return (koszul_bracket(D, a, b * c) - koszul_bracket(D, a, b) * c
            - (b * koszul_bracket(D, a, c)).scale(sign))


def jacobi_defect(D: Operator, a, b, c) -> GradedElement:
    """``[a,[b,c]] - [[a,b],c] - (-1)^<a+D, b+D> [b,[a,c]]`` for the derived bracket."""
    a, b, c = (_in_carrier(D, v) for v in (a, b, c))
    br = lambda x, y: koszul_bracket(D, x, y)
    da, db = bidegree_of(a), bidegree_of(b)
    sign = _sign(add_bidegrees(da, D.bidegree), add_bidegrees(db, D.bidegree))
    return br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c)).scale(sign)


# -- probe operators ------------------------------------------------------------


@dataclass(frozen=True)
class KoszulProbe:
    """An operator together with its known order."""

    name: str
    operator: Operator
    order: int
    # D(1) = 0 and D o D of order <= 2: the hypotheses of the Jacobi identity
    jacobi: bool = False


def partial_operator(kind: str, index: int) -> Operator:
    deg = (0, 0) if kind == "x" else (0, -1)
    return Operator("function", deg, lambda f: coefficient_partial(f, kind, index), f"d_{kind}{index}")


def probe_library(chart: Chart) -> List[KoszulProbe]:
    """Operators of known order on the three carriers; needs m >= 2 and n >= 2."""
    x1 = coordinate(chart, "x", 1)
    x2 = coordinate(chart, "x", 2)
    th1 = coordinate(chart, "th", 1)
    dx1 = partial_operator("x", 1)
    dx2 = partial_operator("x", 2)
    dth1 = partial_operator("th", 1)
    dth2 = partial_operator("th", 2)
    function_probes = [
        KoszulProbe("mu[x1*x1+2]", mul_operator("function", x1 * x1 + 2), 0),
        KoszulProbe("d_x1", dx1, 1),
        KoszulProbe("d_th1", dth1, 1),
        KoszulProbe("d_x1 + mu[x2]", dx1 + mul_operator("function", x2), 1),
        KoszulProbe("d_x1 d_x1", dx1.then(dx1), 2),
        KoszulProbe("d_th1 d_x1", dx1.then(dth1), 2, jacobi=True),
        KoszulProbe("d_th2 d_th1", dth1.then(dth2), 2),
        KoszulProbe("d_x1 d_x2 + mu[x1*x1]", dx2.then(dx1) + mul_operator("function", x1 * x1), 2),
        KoszulProbe("d_x1 d_x1 d_x2", dx2.then(dx1).then(dx1), 3),
    ]
    A = x1 * derivation(chart, "x", 2)
    multivector_probes = [
        KoszulProbe("Delta", GeneratingOperator().operator(), 2, jacobi=True),
        KoszulProbe("iota[d x1*th1]", Operator("multivector", (-1, 1),
                                               lambda C: iota_exact(x1 * th1, C), "iota"), 1),
    ]
    form_probes = [
        KoszulProbe("d", d_operator(), 1),
        KoszulProbe("iota[x1*Dx2]", iota_operator(A), 1),
        KoszulProbe("L[x1*Dx2]", lie_operator(A), 1),
    ]
    return function_probes + multivector_probes + form_probes


def _factor_count(v: GradedElement) -> int:
    (key,) = v.terms
    exps, t, w, o = key
    return sum(exps) + t.bit_count() + w.bit_count() + sum(o)


def koszul_arguments(chart: Chart, carrier: str, degree: int = 3) -> List[GradedElement]:
    """Non-constant monomials of the carrier with at most ``degree`` factors."""
    return [v for v in probe_monomials(chart, carrier, degree) if v != 1]


def argument_tuples(chart: Chart, carrier: str, r: int, total_degree: int):
    """Multisets of r non-constant monomials whose factor counts sum to at most total_degree."""
    pool = sorted(koszul_arguments(chart, carrier, max(1, total_degree - r + 1)),
                  key=_factor_count)
    counts = [_factor_count(v) for v in pool]

    def extend(start, left, budget, prefix):
        if left == 0:
            yield tuple(prefix)
            return
        for i in range(start, len(pool)):
            # every remaining entry needs at least counts[i] factors
            if counts[i] * left > budget:
                break
            prefix.append(pool[i])
            yield from extend(i, left - 1, budget - counts[i], prefix)
            prefix.pop()

    yield from extend(0, r, total_degree, [])


def phi_vanishes(D: Operator, r: int, chart: Chart, total_degree: Optional[int] = None) -> bool:
    """Whether Φ^r is zero on every argument multiset of ``argument_tuples``.

    ``total_degree`` defaults to r + 2 on superfunctions and r + 1 on the
    larger carriers (one spare factor, enough for the library probes).
    """
    if total_degree is None:
        total_degree = r + (2 if D.carrier == "function" else 1)
    for args in argument_tuples(chart, D.carrier, r, total_degree):
        if phi(D, *args):
            return False
    return True
