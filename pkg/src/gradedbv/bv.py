"""Divergences on vector fields and the generating operator they induce.

``delta_extend`` builds Δ by recursion on cohomological degree from its
commutation with insertions of coordinate differentials; ``delta_oracle``
builds it independently from the generating identity and the GSN bracket.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from ._core import Chart, Key
from .brackets import BRACKET_BIDEGREE, from_values, gsn_leibniz, right_contraction_sign
from .calculus import (
    DegreeError,
    Multivector,
    Operator,
    apply_vector,
    as_multivector,
    derivation,
    iota_exact,
    split_key,
)
from .grassmann import Superfunction, coefficient_partial, coordinate


@dataclass(frozen=True)
class Divergence:
    """Coordinate divergence, optionally twisted by an even superfunction w."""

    twist: Optional[Superfunction] = None

    def __post_init__(self):
        if self.twist is not None and self.twist and self.twist.parity() != 0:
            raise ValueError("the twist must be even")

    def __call__(self, D: Multivector) -> Superfunction:
        return divergence_apply(self, D)


def divergence_apply(dv: Divergence, D) -> Superfunction:
    """``div_w(D)``: zero on coordinate fields, extended by the divergence axiom."""
    D = as_multivector(D)
    chart = D.chart
    if D and D.cohomological_degree() != 1:
        raise DegreeError("divergence is defined on vector fields only")
    if D and D.bidegree() == "mixed":
        raise DegreeError("vector field must have homogeneous ghost degree")
    out = Superfunction.zero(chart)
    for key, coef in D.items():
        ckey, (direction,) = split_key(key)
        f = Superfunction._raw(chart, {ckey: coef})
        value = coefficient_partial(f, *direction)
        if direction[0] == "th" and ckey[1].bit_count() & 1:
            value = -value
        out = out + value
    if dv.twist is not None and dv.twist:
        out = out + apply_vector(D, dv.twist).function_part()
    return out


@dataclass(frozen=True)
class GeneratingOperator:
    """Δ_div; ``cache`` memoizes values on unit terms and is owned by this instance."""

    divergence: Divergence = Divergence()
    cache: Dict = field(default_factory=dict, compare=False, repr=False)

    bidegree = BRACKET_BIDEGREE

    def __call__(self, C) -> Multivector:
        return delta_extend(self, C)

    def operator(self) -> Operator:
        """Δ as an operator handle on the multivector carrier."""
        return Operator("multivector", BRACKET_BIDEGREE, self, "Delta")


def _unit(chart: Chart, key: Key) -> Multivector:
    return Multivector._raw(chart, {key: Fraction(1)})


def _linear(fn, C: Multivector) -> Multivector:
    out = Multivector.zero(C.chart)
    for key, coef in C.items():
        out = out + fn(key).scale(coef)
    return out


def _from_insertions(values, deg, chart: Chart) -> Multivector:
    # convert iota_exact values to right-contraction values and reconstruct
    converted = {}
    for direction, value in values.items():
        odd = 1 if direction[0] == "th" else 0
        converted[direction] = value.scale(right_contraction_sign(deg, odd))
    return from_values(converted, deg, chart)


def delta_extend(gen: GeneratingOperator, C, cache: Optional[dict] = None) -> Multivector:
    """Δ(C) from ``iota_a Δ(C) = -Δ(iota_a C)`` on coordinates, starting from -div."""
    C = as_multivector(C)
    chart = C.chart
    cache = gen.cache if cache is None else cache

    def term(key: Key) -> Multivector:
        slot = ("extend", chart, key)
        if slot in cache:
            return cache[slot]
        unit = _unit(chart, key)
        p, k = unit.bidegree()
        if p == 0:
            value = Multivector.zero(chart)
        elif p == 1:
            value = as_multivector(-divergence_apply(gen.divergence, unit))
        else:
            inserted = {
                dr: -delta_extend(gen, iota_exact(coordinate(chart, *dr), unit), cache)
                for dr in chart.directions()
            }
            value = _from_insertions(inserted, (p - 1, k), chart)
        cache[slot] = value
        return value

    return _linear(term, C)


def delta_oracle(gen: GeneratingOperator, C, split: str = "first",
                 cache: Optional[dict] = None) -> Multivector:
    """Δ(C) from ``Δ(X ^ B) = (-1)^X1 [X, B] + Δ(X) ^ B + (-1)^X1 X ^ Δ(B)``.

    ``split="first"`` peels the coefficient times the first letter as X;
    ``split="last"`` takes B to be the last letter.
    """
    C = as_multivector(C)
    chart = C.chart
    cache = {} if cache is None else cache

    def term(key: Key) -> Multivector:
        slot = ("oracle", split, chart, key)
        if slot in cache:
            return cache[slot]
        unit = _unit(chart, key)
        p = unit.cohomological_degree()
        if p == 0:
            value = Multivector.zero(chart)
        elif p == 1:
            value = as_multivector(-divergence_apply(gen.divergence, unit))
        else:
            ckey, letters = split_key(key)
            if split == "first":
                X = _unit(chart, ckey) * derivation(chart, *letters[0])
                B = Multivector.constant(chart)
                for letter in letters[1:]:
                    B = B * derivation(chart, *letter)
            else:
                X = _unit(chart, ckey)
                for letter in letters[:-1]:
                    X = X * derivation(chart, *letter)
                B = derivation(chart, *letters[-1])
            sign = -1 if X.cohomological_degree() & 1 else 1
            rec = lambda v: delta_oracle(gen, v, split, cache)
            value = (gsn_leibniz(X, B).scale(sign) + rec(X) * B + (X * rec(B)).scale(sign))
        cache[slot] = value
        return value

    return _linear(term, C)


def generating_defect(gen: GeneratingOperator, A, B) -> Multivector:
    """``[A,B] - (-1)^A1 (Δ(A^B) - Δ(A)^B - (-1)^A1 A^Δ(B))``; identically zero."""
    A = as_multivector(A)
    B = as_multivector(B)
    out = Multivector.zero(A.chart)
    for a, Ac in A.components().items():
        for _, Bc in B.components().items():
            sign = -1 if a[0] & 1 else 1
            inner = (delta_extend(gen, Ac * Bc) - delta_extend(gen, Ac) * Bc
                     - (Ac * delta_extend(gen, Bc)).scale(sign))
            out = out + gsn_leibniz(Ac, Bc) - inner.scale(sign)
    return out


def delta_commutes_with_insertion(gen: GeneratingOperator, a: Superfunction, C) -> Multivector:
    """``iota_a Δ(C) + Δ(iota_a C)``; identically zero."""
    C = as_multivector(C)
    out = Multivector.zero(C.chart)
    for part in a.components().values():
        out = out + iota_exact(part, delta_extend(gen, C)) + delta_extend(gen, iota_exact(part, C))
    return out
