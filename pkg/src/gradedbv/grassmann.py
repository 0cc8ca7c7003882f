"""Polynomial superfunctions on a split chart R^(m|n) with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

from ._core import (
    Bidegree,
    Chart,
    ChartMismatchError,
    Key,
    add_into,
    as_fraction,
    bits,
    key_bidegree,
    mul_keys,
)

MIXED = "mixed"


class GradedElement:
    """Immutable sparse element of the bigraded term algebra.

    Subclasses fix which letters may appear in the word part: none for
    superfunctions, derivations for multivectors, differentials for forms.
    """

    kind = "element"
    WORD_GHOST = 0  # ghost contribution of one odd-direction letter

    __slots__ = ("chart", "_terms", "_hash")

    def __init__(self, chart: Chart, terms: Optional[Dict[Key, Fraction]] = None):
        self.chart = chart
        clean = {}
        for key, coef in (terms or {}).items():
            coef = as_fraction(coef)
            if coef:
                clean[key] = coef
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, chart: Chart, terms: Dict[Key, Fraction]):
        # trusted constructor: terms already canonical and non-zero
        obj = cls.__new__(cls)
        obj.chart = chart
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, chart: Chart):
        return cls._raw(chart, {})

    @classmethod
    def constant(cls, chart: Chart, value=1):
        return cls(chart, {chart.zero_key(): value})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def term_bidegrees(self) -> set:
        return {key_bidegree(k, self.WORD_GHOST) for k in self._terms}

    def bidegree(self) -> Union[Bidegree, str]:
        """Common bidegree of all terms, ``"mixed"``, or (0, 0) for zero."""
        degrees = self.term_bidegrees()
        if not degrees:
            return (0, 0)
        if len(degrees) == 1:
            return next(iter(degrees))
        return MIXED

    def cohomological_degree(self) -> Union[int, str]:
        degrees = {p for p, _ in self.term_bidegrees()}
        if not degrees:
            return 0
        return degrees.pop() if len(degrees) == 1 else MIXED

    def components(self) -> Dict[Bidegree, "GradedElement"]:
        """Split into homogeneous components keyed by bidegree."""
        parts: Dict[Bidegree, dict] = {}
        for key, coef in self._terms.items():
            parts.setdefault(key_bidegree(key, self.WORD_GHOST), {})[key] = coef
        return {deg: self._raw(self.chart, t) for deg, t in parts.items()}

    def function_part(self) -> "Superfunction":
        """Terms with an empty word, as a superfunction."""
        return Superfunction._raw(
            self.chart, {k: c for k, c in self._terms.items() if not k[2] and not any(k[3])}
        )

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "GradedElement") -> None:
        if self.chart != other.chart:
            raise ChartMismatchError(f"chart {self.chart} does not match {other.chart}")

    def _result_class(self, other: "GradedElement"):
        a, b = type(self), type(other)
        if a is b or b is Superfunction:
            return a
        if a is Superfunction:
            return b
        raise TypeError(f"cannot combine a {a.kind} with a {b.kind}")

    def _coerce(self, other):
        if isinstance(other, GradedElement):
            return other
        if isinstance(other, (int, Fraction)):
            return Superfunction.constant(self.chart, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check(other)
        cls = self._result_class(other)
        terms = dict(self._terms)
        for key, coef in other._terms.items():
            add_into(terms, key, coef)
        return cls._raw(self.chart, terms)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.chart, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = as_fraction(factor)
        if not factor:
            return self.zero(self.chart)
        return self._raw(self.chart, {k: c * factor for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check(other)
        cls = self._result_class(other)
        out: Dict[Key, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                res = mul_keys(k1, k2)
                if res is not None:
                    key, sign = res
                    add_into(out, key, c1 * c2 if sign > 0 else -c1 * c2)
        return cls._raw(self.chart, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # the graded product is the wedge product; ``^`` mirrors the input grammar
    __xor__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Superfunction.constant(self.chart, other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        if self.chart != other.chart or self._terms != other._terms:
            return False
        if type(self) is type(other) or not self._terms:
            return True
        # a pure function agrees with the same function viewed in a larger algebra
        return all(not k[2] and not any(k[3]) for k in self._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .cli.printer import format_value

        return f"{type(self).__name__}({format_value(self)!r}, chart={self.chart})"

    def __str__(self):
        from .cli.printer import format_value

        return format_value(self)


class Superfunction(GradedElement):
    """Element of the graded commutative algebra of polynomial superfunctions."""

    kind = "function"
    WORD_GHOST = 0

    __slots__ = ()

    def ghost_degree(self) -> Union[int, str]:
        return sf_ghost_degree(self)

    def parity(self) -> int:
        """Ghost degree mod 2; raises ValueError on mixed parity."""
        parities = {k[1].bit_count() & 1 for k in self._terms}
        if len(parities) > 1:
            raise ValueError(f"{self} has mixed parity")
        return parities.pop() if parities else 0


def coordinate(chart: Chart, kind: str, index: int) -> Superfunction:
    """The coordinate function x_i (kind "x") or th_j (kind "th")."""
    chart.check_index(kind, index)
    exps = [0] * chart.m
    mask = 0
    if kind == "x":
        exps[index - 1] = 1
    else:
        mask = 1 << (index - 1)
    return Superfunction._raw(chart, {(tuple(exps), mask, 0, (0,) * chart.n): Fraction(1)})


def monomial(chart: Chart, exps: Iterable[int], odd: Iterable[int] = (), coef=1) -> Superfunction:
    """Build ``coef * x^exps * th_odd[0] * th_odd[1] * ...`` in the given factor order."""
    exps = tuple(exps)
    if len(exps) != chart.m or any(e < 0 for e in exps):
        raise ValueError("exponent vector does not fit the chart")
    out = Superfunction._raw(chart, {(exps, 0, 0, (0,) * chart.n): as_fraction(coef)})
    for j in odd:
        out = out * coordinate(chart, "th", j)
    return out


def sf_add(f: Superfunction, g: Superfunction) -> Superfunction:
    return f + g


def sf_mul(f: Superfunction, g: Superfunction) -> Superfunction:
    return f * g


def sf_ghost_degree(f: GradedElement) -> Union[int, str]:
    """Common number of odd generators in every term; 0 for the zero function."""
    degrees = {k[1].bit_count() for k, _ in f.items()}
    if not degrees:
        return 0
    return degrees.pop() if len(degrees) == 1 else MIXED


def partial_key(key: Key, kind: str, index: int) -> Optional[Tuple[Key, int]]:
    """Left derivative of the coefficient part of one term: ``(key, factor)``."""
    exps, t, w, o = key
    if kind == "x":
        e = exps[index - 1]
        if not e:
            return None
        new = list(exps)
        new[index - 1] = e - 1
        return (tuple(new), t, w, o), e
    bit = 1 << (index - 1)
    if not t & bit:
        return None
    before = (t & (bit - 1)).bit_count()
    return (exps, t ^ bit, w, o), (-1 if before & 1 else 1)


def coefficient_partial(elem: GradedElement, kind: str, index: int) -> GradedElement:
    """Apply a left partial derivative to the coefficient of every term."""
    elem.chart.check_index(kind, index)
    out: Dict[Key, Fraction] = {}
    for key, coef in elem.items():
        res = partial_key(key, kind, index)
        if res is not None:
            new, factor = res
            add_into(out, new, coef * factor)
    return elem._raw(elem.chart, out)


def sf_partial(direction: Tuple[str, int], f: Superfunction) -> Superfunction:
    """Graded partial derivative ``d/dx_i`` or the left derivative ``d/dth_j``."""
    kind, index = direction
    if kind not in ("x", "th"):
        raise ValueError(f"unknown direction {kind!r}")
    return coefficient_partial(f, kind, index)


def direction_parity(direction: Tuple[str, int]) -> int:
    return 0 if direction[0] == "x" else 1


def odd_indices(key: Key) -> Tuple[int, ...]:
    return tuple(bits(key[1]))
