"""Graded multivector fields, graded forms and the operators acting on them.

Conventions (all checked by the test-suite):

* a vector field ``X = sum g_mu * D_mu`` acts on superfunctions as a left
  derivation, ``X(f) = sum g_mu * (left d f / d zeta_mu)``;
* ``iota_X`` is the left derivation of the form algebra of bidegree
  ``(-1, |X|)`` with ``iota_X(d zeta_mu) = X(zeta_mu)``; it is left-linear in X;
* for ``A = X_1 ^ ... ^ X_q`` the insertion is ``iota_X1 o ... o iota_Xq``
  and ``pair(X_1, ..., X_p; lam) = iota_Xp o ... o iota_X1 (lam)``, so that
  ``pair(Dx1, Dx2; dx1 ^ dx2) = 1``;
* ``lie(A) = [iota_A, d]`` with the bigraded commutator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ._core import Bidegree, Chart, Key, add_into, bits, key_bidegree
from .grassmann import (
    MIXED,
    GradedElement,
    Superfunction,
    coefficient_partial,
    coordinate,
    partial_key,
)

Direction = Tuple[str, int]


class DegreeError(ValueError):
    """Raised on cohomological or ghost degree mismatches."""


class ReconstructionError(ArithmeticError):
    """An operator was not of the promised form, or a recursion was inconsistent."""


class Multivector(GradedElement):
    """Element of the wedge algebra of graded vector fields over superfunctions."""

    kind = "multivector"
    WORD_GHOST = -1
    __slots__ = ()


class GradedForm(GradedElement):
    """Element of the algebra of graded differential forms."""

    kind = "form"
    WORD_GHOST = 1
    __slots__ = ()


def pairing(a: Bidegree, b: Bidegree) -> int:
    return a[0] * b[0] + a[1] * b[1]


def bidegree_of(elem: GradedElement) -> Bidegree:
    deg = elem.bidegree()
    if deg == MIXED:
        raise DegreeError(f"{elem} is not homogeneous")
    return deg


def add_bidegrees(*degs: Bidegree) -> Bidegree:
    return (sum(d[0] for d in degs), sum(d[1] for d in degs))


# -- generators -----------------------------------------------------------------


def _letter_key(chart: Chart, direction: Direction) -> Key:
    kind, index = direction
    chart.check_index(kind, index)
    if kind == "x":
        return ((0,) * chart.m, 0, 1 << (index - 1), (0,) * chart.n)
    counts = [0] * chart.n
    counts[index - 1] = 1
    return ((0,) * chart.m, 0, 0, tuple(counts))


def derivation(chart: Chart, kind: str, index: int) -> Multivector:
    """Coordinate vector field Dx_i or Dth_j."""
    return Multivector._raw(chart, {_letter_key(chart, (kind, index)): Fraction(1)})


def differential(chart: Chart, kind: str, index: int) -> GradedForm:
    """Coordinate differential dx_i or dth_j."""
    return GradedForm._raw(chart, {_letter_key(chart, (kind, index)): Fraction(1)})


def as_multivector(elem: GradedElement) -> Multivector:
    if isinstance(elem, Multivector):
        return elem
    if isinstance(elem, Superfunction):
        return Multivector._raw(elem.chart, dict(elem.items()))
    raise TypeError(f"expected a multivector, got a {elem.kind}")


def as_form(elem: GradedElement) -> GradedForm:
    if isinstance(elem, GradedForm):
        return elem
    if isinstance(elem, Superfunction):
        return GradedForm._raw(elem.chart, dict(elem.items()))
    raise TypeError(f"expected a form, got a {elem.kind}")


def split_key(key: Key) -> Tuple[Key, List[Direction]]:
    """Coefficient key and the word letters of a term, in canonical order."""
    exps, t, w, o = key
    letters: List[Direction] = [("x", i) for i in bits(w)]
    for j, c in enumerate(o, start=1):
        letters.extend([("th", j)] * c)
    return (exps, t, 0, (0,) * len(o)), letters


def word_key(chart: Chart, w: int, o: Tuple[int, ...]) -> Key:
    return ((0,) * chart.m, 0, w, o)


def canonical_words(chart: Chart, q: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """All canonical words of length q: even subsets times odd multisets."""
    words = []
    for e in range(min(q, chart.m) + 1):
        for subset in itertools.combinations(range(chart.m), e):
            w = sum(1 << i for i in subset)
            rest = q - e
            if rest and not chart.n:
                continue
            for combo in itertools.combinations_with_replacement(range(chart.n), rest):
                counts = [0] * chart.n
                for j in combo:
                    counts[j] += 1
                words.append((w, tuple(counts)))
    return words


def mv_wedge(a: GradedElement, b: GradedElement) -> GradedElement:
    return a * b


form_wedge = mv_wedge


# -- vector fields acting on superfunctions -------------------------------------


def apply_vector(X: GradedElement, f: GradedElement) -> GradedElement:
    """X(f) for a vector field X, acting on the coefficients of f."""
    X = as_multivector(X)
    chart = X.chart
    out = Superfunction.zero(chart) if isinstance(f, Superfunction) else f.zero(chart)
    for key, coef in X.items():
        ckey, letters = split_key(key)
        if len(letters) != 1:
            raise DegreeError(f"{X} is not a vector field")
        g = Superfunction._raw(chart, {ckey: coef})
        out = out + g * coefficient_partial(f, *letters[0])
    return out


def vector_commutator(X: Multivector, Y: Multivector) -> Multivector:
    """Graded commutator of two homogeneous vector fields as derivations."""
    chart = X.chart
    sign = -1 if (X.bidegree()[1] * Y.bidegree()[1]) & 1 else 1
    out = Multivector.zero(chart)
    for direction in chart.directions():
        z = coordinate(chart, *direction)
        value = apply_vector(X, apply_vector(Y, z)) - apply_vector(Y, apply_vector(X, z)).scale(sign)
        if value:
            out = out + value * derivation(chart, *direction)
    return out


# -- insertion of multivectors into forms ---------------------------------------


def _iota_letter_key(key: Key, direction: Direction) -> Optional[Tuple[Key, int]]:
    exps, t, w, o = key
    kind, index = direction
    if kind == "x":
        bit = 1 << (index - 1)
        if not w & bit:
            return None
        before = (w & (bit - 1)).bit_count()
        return (exps, t, w ^ bit, o), (-1 if before & 1 else 1)
    count = o[index - 1]
    if not count:
        return None
    sign = -1 if (t.bit_count() + w.bit_count()) & 1 else 1
    new = list(o)
    new[index - 1] = count - 1
    return (exps, t, w, tuple(new)), sign * count


def iota_coordinate(direction: Direction, lam: GradedForm) -> GradedForm:
    """Insertion of a coordinate vector field into a form (left derivation)."""
    out: Dict[Key, Fraction] = {}
    for key, coef in lam.items():
        res = _iota_letter_key(key, direction)
        if res is not None:
            new, factor = res
            add_into(out, new, coef * factor)
    return GradedForm._raw(lam.chart, out)


def iota_form(A: GradedElement, lam: GradedElement) -> GradedForm:
    """Insertion operator of a multivector into a graded form."""
    A = as_multivector(A)
    lam = as_form(lam)
    if A.chart != lam.chart:
        from ._core import ChartMismatchError

        raise ChartMismatchError("chart mismatch")
    chart = A.chart
    out = GradedForm.zero(chart)
    for key, coef in A.items():
        ckey, letters = split_key(key)
        value = lam
        for direction in reversed(letters):
            value = iota_coordinate(direction, value)
            if not value:
                break
        if value:
            out = out + GradedForm._raw(chart, {ckey: coef}) * value
    return out


def pair(vectors: Sequence[GradedElement], lam: GradedElement) -> Superfunction:
    """Full contraction ``<X_1, ..., X_p; lam>`` (no factorial normalisation)."""
    lam = as_form(lam)
    p = lam.cohomological_degree()
    if p != len(vectors):
        raise DegreeError(f"{len(vectors)} vectors cannot fill a form of degree {p}")
    value = lam
    for X in vectors:
        if as_multivector(X).cohomological_degree() != 1:
            raise DegreeError(f"{X} is not a vector field")
        value = iota_form(X, value)
    return value.function_part()


# -- exterior differential and Lie derivative -----------------------------------


def d(lam: GradedElement) -> GradedForm:
    """Graded exterior differential, a derivation of bidegree (1, 0)."""
    lam = as_form(lam)
    chart = lam.chart
    out = GradedForm.zero(chart)
    dirs = chart.directions()
    diffs = {direction: differential(chart, *direction) for direction in dirs}
    for key, coef in lam.items():
        exps, t, w, o = key
        word = GradedForm._raw(chart, {word_key(chart, w, o): Fraction(1)})
        g_key = (exps, t, 0, (0,) * chart.n)
        for direction in dirs:
            res = partial_key(g_key, *direction)
            if res is None:
                continue
            new, factor = res
            dg = diffs[direction] * GradedForm._raw(chart, {new: coef * factor})
            out = out + dg * word
    return out


def _by_cohomological_degree(A: GradedElement) -> Dict[int, GradedElement]:
    parts: Dict[int, dict] = {}
    for key, coef in A.items():
        p, _ = key_bidegree(key, A.WORD_GHOST)
        parts.setdefault(p, {})[key] = coef
    return {p: A._raw(A.chart, t) for p, t in parts.items()}


def lie(A: GradedElement, lam: GradedElement) -> GradedForm:
    """Generalised Lie derivative ``[iota_A, d] = iota_A d - (-1)^A1 d iota_A``."""
    A = as_multivector(A)
    lam = as_form(lam)
    out = GradedForm.zero(lam.chart)
    for p, part in _by_cohomological_degree(A).items():
        first = iota_form(part, d(lam))
        second = d(iota_form(part, lam))
        out = out + first - (second if p % 2 == 0 else -second)
    return out


# -- insertion of exact one-forms into multivectors -----------------------------


def iota_exact(a: Superfunction, A: GradedElement) -> Multivector:
    """Insertion of ``d a`` into a multivector.

    A left derivation of bidegree ``(-1, |a|)`` of the wedge algebra; on a
    homogeneous vector field it gives ``(-1)^(|a| |X|) X(a)``.
    """
    A = as_multivector(A)
    parity = a.parity()
    chart = A.chart
    out = Multivector.zero(chart)
    letter_values = {}
    for direction in chart.directions():
        h = coefficient_partial(a, *direction)
        if parity and direction[0] == "th":
            h = -h
        letter_values[direction] = as_multivector(h)
    for key, coef in A.items():
        ckey, letters = split_key(key)
        g = Multivector._raw(chart, {ckey: coef})
        if parity and ckey[1].bit_count() & 1:
            g = -g
        prefix = g
        for i, direction in enumerate(letters):
            h = letter_values[direction]
            if h:
                suffix = Multivector.constant(chart)
                for later in letters[i + 1:]:
                    suffix = suffix * derivation(chart, *later)
                out = out + prefix * h * suffix
            # passing a letter of ghost -|nu| costs (-1)^(1 + |a||nu|)
            flip = 1 + (parity if direction[0] == "th" else 0)
            prefix = prefix * derivation(chart, *direction)
            if flip & 1:
                prefix = -prefix
    return out


# -- operators ------------------------------------------------------------------

CARRIERS = ("function", "form", "multivector")


@dataclass(frozen=True)
class Operator:
    """A linear endomorphism of one carrier algebra with a declared bidegree."""

    carrier: str
    bidegree: Bidegree
    fn: Callable[[GradedElement], GradedElement] = field(compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.carrier not in CARRIERS:
            raise ValueError(f"unknown carrier {self.carrier!r}")

    def __call__(self, value: GradedElement) -> GradedElement:
        return self.fn(value)

    def then(self, other: "Operator") -> "Operator":
        """Composition ``other o self``."""
        _same_carrier(self, other)
        return Operator(
            self.carrier,
            add_bidegrees(self.bidegree, other.bidegree),
            lambda v, a=self, b=other: b(a(v)),
            f"{other.name}*{self.name}",
        )

    def __add__(self, other: "Operator") -> "Operator":
        _same_carrier(self, other)
        if self.bidegree != other.bidegree:
            raise DegreeError("cannot add operators of different bidegree")
        return Operator(self.carrier, self.bidegree, lambda v, a=self, b=other: a(v) + b(v),
                        f"({self.name}+{other.name})")


def _same_carrier(a: Operator, b: Operator) -> None:
    if a.carrier != b.carrier:
        raise TypeError(f"carrier mismatch: {a.carrier} vs {b.carrier}")


def mul_operator(carrier: str, a: GradedElement) -> Operator:
    """Left multiplication ``mu_a``, of order 0 and bidegree that of a."""
    deg = bidegree_of(a)
    return Operator(carrier, deg, lambda v, a=a: a * v, f"mu[{a}]")


def zero_operator(carrier: str, bidegree: Bidegree = (0, 0)) -> Operator:
    return Operator(carrier, bidegree, lambda v: v.zero(v.chart), "0")


def d_operator() -> Operator:
    return Operator("form", (1, 0), d, "d")


def iota_operator(A: GradedElement) -> Operator:
    A1, A2 = bidegree_of(as_multivector(A))
    return Operator("form", (-A1, A2), lambda lam, A=A: iota_form(A, lam), f"iota[{A}]")


def lie_operator(A: GradedElement) -> Operator:
    A1, A2 = bidegree_of(as_multivector(A))
    return Operator("form", (1 - A1, A2), lambda lam, A=A: lie(A, lam), f"L[{A}]")


def op_commutator(theta: Operator, xi: Operator) -> Operator:
    """Bigraded commutator ``theta o xi - (-1)^<theta, xi> xi o theta``."""
    _same_carrier(theta, xi)
    odd = pairing(theta.bidegree, xi.bidegree) & 1

    def apply(v, theta=theta, xi=xi):
        first = theta(xi(v))
        second = xi(theta(v))
        return first + second if odd else first - second

    return Operator(theta.carrier, add_bidegrees(theta.bidegree, xi.bidegree), apply,
                    f"[{theta.name},{xi.name}]")


def carrier_class(carrier: str):
    return {"function": Superfunction, "form": GradedForm, "multivector": Multivector}[carrier]


def carrier_generators(chart: Chart, carrier: str) -> List[GradedElement]:
    """Coordinates plus, for forms / multivectors, the coordinate letters."""
    cls = carrier_class(carrier)
    gens = [cls._raw(chart, dict(coordinate(chart, *dr).items())) for dr in chart.directions()]
    if carrier == "form":
        gens += [differential(chart, *dr) for dr in chart.directions()]
    elif carrier == "multivector":
        gens += [derivation(chart, *dr) for dr in chart.directions()]
    return gens


def probe_monomials(chart: Chart, carrier: str, degree_bound: int) -> List[GradedElement]:
    """Every canonical monomial whose total factor count is at most degree_bound."""
    cls = carrier_class(carrier)
    max_word = degree_bound if carrier != "function" else 0
    probes = []
    for q in range(max_word + 1):
        for w, o in canonical_words(chart, q):
            for s in range(min(chart.n, degree_bound - q) + 1):
                for theta in itertools.combinations(range(chart.n), s):
                    t = sum(1 << j for j in theta)
                    rest = degree_bound - q - s
                    for total in range(rest + 1):
                        for exps in _compositions(total, chart.m):
                            probes.append(cls._raw(chart, {(exps, t, w, o): Fraction(1)}))
    return probes


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for combo in itertools.combinations_with_replacement(range(parts), total):
        exps = [0] * parts
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


def nested_commutator_value(theta: Operator, multipliers: Sequence[GradedElement],
                            value: GradedElement) -> GradedElement:
    """``[[...[theta, mu_a1], ...], mu_ak](value)`` evaluated without building operators."""
    if not multipliers:
        return theta(value)
    *rest, a = multipliers
    inner = add_bidegrees(theta.bidegree, *(bidegree_of(b) for b in rest))
    first = nested_commutator_value(theta, rest, a * value)
    second = a * nested_commutator_value(theta, rest, value)
    return first + second if pairing(inner, bidegree_of(a)) & 1 else first - second


def order_at_most(theta: Operator, q: int, probe_functions: Optional[Sequence] = None,
                  inputs: Optional[Sequence] = None, chart: Optional[Chart] = None,
                  probe_degree: int = 4) -> bool:
    """Probe-based check of ``order(theta) <= q``.

    ``probe_functions`` are the multipliers ``a_i`` (default: the algebra
    generators, which suffice because the space of operators of order
    ``< k`` is stable under commutators with products of multipliers);
    ``inputs`` are the elements the nested commutator is evaluated on
    (default: all monomials up to ``probe_degree``).
    """
    if probe_functions is None or inputs is None:
        if chart is None:
            raise ValueError("a chart is needed to build default probes")
    if probe_functions is None:
        probe_functions = carrier_generators(chart, theta.carrier)
    if inputs is None:
        inputs = probe_monomials(chart, theta.carrier, probe_degree)
    if not probe_functions:
        raise ValueError("probe list must be non-empty")
    for combo in itertools.combinations_with_replacement(range(len(probe_functions)), q + 1):
        mults = [probe_functions[i] for i in combo]
        for value in inputs:
            if nested_commutator_value(theta, mults, value):
                return False
    return True


@lru_cache(maxsize=None)
def _word_normalisation(chart: Chart, w: int, o: Tuple[int, ...]) -> Fraction:
    key = word_key(chart, w, o)
    W = Multivector._raw(chart, {key: Fraction(1)})
    U = GradedForm._raw(chart, {key: Fraction(1)})
    value = iota_form(W, U)
    return value.function_part().terms.get(chart.zero_key(), Fraction(0))


def verification_forms(chart: Chart, q: int) -> List[GradedForm]:
    """Probe forms for extensional checks of degree-q insertions."""
    forms = []
    for p in (q, q + 1):
        for w, o in canonical_words(chart, p):
            forms.append(GradedForm._raw(chart, {word_key(chart, w, o): Fraction(1)}))
    extra = [coordinate(chart, "th", j) for j in range(1, chart.n + 1)]
    if chart.m:
        extra.append(coordinate(chart, "x", 1))
    for w, o in canonical_words(chart, q):
        U = GradedForm._raw(chart, {word_key(chart, w, o): Fraction(1)})
        forms.extend(as_form(f) * U for f in extra)
    return forms


def reconstruct_multivector(theta: Operator, q: int, probes: Optional[Sequence] = None,
                            chart: Optional[Chart] = None) -> Multivector:
    """Recover C from an operator promised to equal ``iota_C`` with C of degree q."""
    if theta.carrier != "form":
        raise TypeError("reconstruction needs an operator on forms")
    if chart is None:
        raise ValueError("chart is required")
    out = Multivector.zero(chart)
    if q < 0:
        return out
    for w, o in canonical_words(chart, q):
        U = GradedForm._raw(chart, {word_key(chart, w, o): Fraction(1)})
        value = theta(U)
        if value.cohomological_degree() not in (0,) and value:
            raise ReconstructionError(f"{theta.name} sends {U} to a non-function")
        if value:
            kappa = _word_normalisation(chart, w, o)
            W = Multivector._raw(chart, {word_key(chart, w, o): Fraction(1)})
            out = out + as_multivector(value.function_part()).scale(1 / kappa) * W
    if probes is None:
        probes = verification_forms(chart, q)
    for lam in probes:
        if iota_form(out, lam) != theta(lam):
            raise ReconstructionError(f"{theta.name} is not an insertion operator (probe {lam})")
    return out
