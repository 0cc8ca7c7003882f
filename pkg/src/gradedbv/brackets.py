"""The graded Schouten-Nijenhuis bracket and Krasil'shchik's multiderivation calculus.

Two independent routes compute the GSN bracket:

* ``gsn_operator`` reconstructs the multivector C with
  ``[L_A, iota_B] = iota_C`` from the action of that operator on forms;
* ``gsn_leibniz`` uses only the generator values ``[a, b] = 0``,
  ``[X, a] = X(a)``, ``[X, Y] = `` commutator of derivations, the right
  Leibniz rule and graded antisymmetry.

Multiderivations are evaluated through ``md_apply``, the right contraction
``F(a)`` (a right derivation of the wedge algebra of bidegree ``(-1, |a|)``);
``md_star`` and ``ks_bracket`` are then computed by the recursions on
marked degree and never call the GSN code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from ._core import Bidegree, Chart, Key
from .calculus import (
    DegreeError,
    Multivector,
    ReconstructionError,
    apply_vector,
    as_multivector,
    bidegree_of,
    derivation,
    iota_exact,
    lie_operator,
    iota_operator,
    op_commutator,
    reconstruct_multivector,
    split_key,
    vector_commutator,
)
from .grassmann import GradedElement, Superfunction, coordinate

BRACKET_BIDEGREE: Bidegree = (-1, 0)


@dataclass(frozen=True)
class BracketDescriptor:
    """Bidegree of a bracket; (-1, 0) for both GSN and KS."""

    bidegree: Bidegree = BRACKET_BIDEGREE


def antisymmetry_sign(a: Bidegree, b: Bidegree) -> int:
    """``-(-1)^((a1-1)(b1-1) + a2 b2)``, so that ``[A, B] = sign * [B, A]``."""
    return 1 if ((a[0] - 1) * (b[0] - 1) + a[1] * b[1]) & 1 else -1


def leibniz_sign(a: Bidegree, b: Bidegree) -> int:
    """``(-1)^((a1-1) b1 + a2 b2)``: cost of moving ``[A, -]`` past B."""
    return -1 if ((a[0] - 1) * b[0] + a[1] * b[1]) & 1 else 1


def _bilinear(term_fn, A: GradedElement, B: GradedElement) -> Multivector:
    A = as_multivector(A)
    B = as_multivector(B)
    if A.chart != B.chart:
        from ._core import ChartMismatchError

        raise ChartMismatchError("chart mismatch")
    out = Multivector.zero(A.chart)
    for ka, ca in A.items():
        for kb, cb in B.items():
            value = term_fn(A.chart, ka, kb)
            if value:
                out = out + value.scale(ca * cb)
    return out


def _unit(chart: Chart, key: Key) -> Multivector:
    return Multivector._raw(chart, {key: Fraction(1)})


def _deg(chart: Chart, key: Key) -> Bidegree:
    return _unit(chart, key).bidegree()


# -- Leibniz route --------------------------------------------------------------


def _split_first(chart: Chart, key: Key):
    ckey, letters = split_key(key)
    head = Multivector._raw(chart, {ckey: Fraction(1)}) * derivation(chart, *letters[0])
    tail = Multivector.constant(chart)
    for letter in letters[1:]:
        tail = tail * derivation(chart, *letter)
    return head, tail


def _split_last(chart: Chart, key: Key):
    ckey, letters = split_key(key)
    head = Multivector._raw(chart, {ckey: Fraction(1)})
    for letter in letters[:-1]:
        head = head * derivation(chart, *letter)
    return head, derivation(chart, *letters[-1])


def _apply_leibniz(A: Multivector, left: Multivector, right: Multivector, bracket) -> Multivector:
    """``[A, L ^ R] = [A, L] ^ R + sign * L ^ [A, R]`` for homogeneous pieces."""
    a = bidegree_of(A)
    first = bracket(A, left) * right
    second = left * bracket(A, right)
    return first + second.scale(leibniz_sign(a, bidegree_of(left)))


def _make_leibniz(split):
    @lru_cache(maxsize=200_000)
    def term(chart: Chart, ka: Key, kb: Key) -> Multivector:
        a, b = _deg(chart, ka), _deg(chart, kb)
        A, B = _unit(chart, ka), _unit(chart, kb)
        rec = lambda x, y: _bilinear(term, x, y)
        if a[0] == 0 and b[0] == 0:
            return Multivector.zero(chart)
        if b[0] >= 2:
            left, right = split(chart, kb)
            return _apply_leibniz(A, left, right, rec)
        if b[0] == 1:
            if a[0] == 1:
                return vector_commutator(A, B)
            # reduce to the vector in the left slot
            return rec(B, A).scale(antisymmetry_sign(a, b))
        # b[0] == 0
        if a[0] == 1:
            return as_multivector(apply_vector(A, B.function_part()))
        return rec(B, A).scale(antisymmetry_sign(a, b))

    return term


_leibniz_first = _make_leibniz(_split_first)
_leibniz_last = _make_leibniz(_split_last)


def gsn_leibniz(A: GradedElement, B: GradedElement, split: str = "first") -> Multivector:
    """GSN bracket from generator values, right Leibniz rule and antisymmetry.

    ``split`` chooses how multi-letter right arguments are decomposed
    (``"first"``: head letter; ``"last"``: last letter); the result does not
    depend on it.
    """
    term = _leibniz_first if split == "first" else _leibniz_last
    return _bilinear(term, A, B)


# -- operator route -------------------------------------------------------------


def gsn_operator(A: GradedElement, B: GradedElement) -> Multivector:
    """GSN bracket as the multivector C with ``[L_A, iota_B] = iota_C``."""
    A = as_multivector(A)
    B = as_multivector(B)
    chart = A.chart
    out = Multivector.zero(chart)
    for a, Ac in A.components().items():
        for b, Bc in B.components().items():
            q = a[0] + b[0] - 1
            if q < 0:
                continue
            theta = op_commutator(lie_operator(Ac), iota_operator(Bc))
            out = out + reconstruct_multivector(theta, q, chart=chart)
    return out


gsn = gsn_leibniz


# -- multiderivations ------------------------------------------------------------


@dataclass(frozen=True)
class Multiderivation:
    """A multiderivation, stored through its multivector body."""

    body: Multivector

    @property
    def marked_degree(self):
        return self.body.cohomological_degree()

    @property
    def degree(self):
        return self.body.bidegree()

    def __call__(self, a: Superfunction) -> "Multiderivation":
        return Multiderivation(md_apply(self.body, a))

    def __mul__(self, other: "Multiderivation") -> "Multiderivation":
        return Multiderivation(md_star(self.body, other.body))


def _body(F) -> Multivector:
    return F.body if isinstance(F, Multiderivation) else as_multivector(F)


def right_contraction_sign(deg: Bidegree, a_parity: int) -> int:
    """Sign relating ``F(a)`` to ``iota_exact(a, F)`` on a component of bidegree deg."""
    return -1 if (deg[0] + 1 + a_parity * deg[1]) & 1 else 1


def md_apply(F, a: Superfunction) -> Multivector:
    """``F(a)``: the value of a multiderivation on a superfunction."""
    body = _body(F)
    parity = a.parity()
    out = Multivector.zero(body.chart)
    for deg, part in body.components().items():
        if deg[0] == 0:
            raise DegreeError("superfunctions take no arguments")
        out = out + iota_exact(a, part).scale(right_contraction_sign(deg, parity))
    return out


def from_values(values: Dict[Tuple[str, int], Multivector], deg: Bidegree, chart: Chart) -> Multivector:
    """The unique element R of bidegree deg with ``R(zeta_mu) = values[mu]``."""
    p, k = deg
    if p < 1:
        raise DegreeError("only positive marked degrees are determined by their values")
    out = Multivector.zero(chart)
    for direction, value in values.items():
        if not value:
            continue
        odd = 1 if direction[0] == "th" else 0
        left_value = value.scale(right_contraction_sign(deg, odd))
        term = derivation(chart, *direction) * left_value
        out = out + (-term if odd else term)
    out = out.scale(Fraction(1, p))
    for direction, value in values.items():
        if md_apply(out, coordinate(chart, *direction)) != value:
            raise ReconstructionError(
                f"no element of bidegree {deg} has the prescribed value on {direction}")
    return out


def _values(chart: Chart, fn) -> Dict[Tuple[str, int], Multivector]:
    return {dr: fn(dr, coordinate(chart, *dr)) for dr in chart.directions()}


def _homogeneous_pairs(F, G):
    F, G = _body(F), _body(G)
    if F.chart != G.chart:
        from ._core import ChartMismatchError

        raise ChartMismatchError("chart mismatch")
    for f, Fc in F.components().items():
        for g, Gc in G.components().items():
            yield f, Fc, g, Gc


@lru_cache(maxsize=100_000)
def _star(F: Multivector, G: Multivector) -> Multivector:
    f, g = F.bidegree(), G.bidegree()
    chart = F.chart
    if f[0] == 0:
        return F * G
    if g[0] == 0:
        # F * a = (-1)^(F a) a . F
        sign = -1 if (f[1] * g[1]) & 1 else 1
        return (G * F).scale(sign)

    def value(direction, z):
        odd = 1 if direction[0] == "th" else 0
        first = md_star(F, md_apply(G, z))
        second = md_star(md_apply(F, z), G)
        sign = -1 if (odd * g[1] + g[0]) & 1 else 1
        return first + second.scale(sign)

    return from_values(_values(chart, value), (f[0] + g[0], f[1] + g[1]), chart)


def md_star(F, G) -> Multivector:
    """Krasil'shchik's product of multiderivations, by recursion on marked degree."""
    out = Multivector.zero(_body(F).chart)
    for _, Fc, _, Gc in _homogeneous_pairs(F, G):
        out = out + _star(Fc, Gc)
    return out


@lru_cache(maxsize=100_000)
def _ks(F: Multivector, G: Multivector) -> Multivector:
    f, g = F.bidegree(), G.bidegree()
    chart = F.chart
    if f[0] == 0 and g[0] == 0:
        return Multivector.zero(chart)
    if g[0] == 0:
        return md_apply(F, G.function_part())
    if f[0] == 0:
        sign = -1 if (f[1] * g[1] + g[0]) & 1 else 1
        return md_apply(G, F.function_part()).scale(sign)

    def value(direction, z):
        odd = 1 if direction[0] == "th" else 0
        first = ks_bracket(F, md_apply(G, z))
        second = ks_bracket(md_apply(F, z), G)
        sign = -1 if (g[0] - 1 + odd * g[1]) & 1 else 1
        return first + second.scale(sign)

    deg = (f[0] + g[0] - 1, f[1] + g[1])
    if deg[0] == 0:
        # both vector fields: the bracket is a function, fixed by its (zero) marked degree
        raise AssertionError("unreachable: f, g >= 1 gives marked degree >= 1")
    return from_values(_values(chart, value), deg, chart)


def ks_bracket(F, G) -> Multivector:
    """Krasil'shchik-Schouten bracket, by recursion on marked degrees."""
    out = Multivector.zero(_body(F).chart)
    for _, Fc, _, Gc in _homogeneous_pairs(F, G):
        out = out + _ks(Fc, Gc)
    return out


@dataclass(frozen=True)
class PhiReport:
    """Correspondence signs between (star, KS) and (wedge, GSN) on one pair.

    A sign is +1 or -1 when the two sides agree up to that sign and None
    when they are not proportional.
    """

    star_sign: Optional[int]
    bracket_sign: Optional[int]

    @property
    def exact(self) -> bool:
        return self.star_sign == 1 and self.bracket_sign == 1


def _relative_sign(x: Multivector, y: Multivector) -> Optional[int]:
    if x == y:
        return 1
    if x == -y:
        return -1
    return None


def phi(F) -> Multiderivation:
    """Multivector to multiderivation; the identity on the coordinate representation."""
    return Multiderivation(as_multivector(F))


def phi_inverse(F: Multiderivation) -> Multivector:
    return F.body


def phi_check(F, G=None) -> PhiReport:
    """Compare ``md_star``/``ks_bracket`` with wedge/GSN on (F, G); G defaults to F."""
    F = _body(F)
    G = F if G is None else _body(G)
    return PhiReport(
        _relative_sign(md_star(F, G), F * G),
        _relative_sign(ks_bracket(F, G), gsn_leibniz(F, G)),
    )


def _classical_factors(chart: Chart, key: Key):
    ckey, letters = split_key(key)
    factors = [derivation(chart, *letter) for letter in letters]
    if factors:
        factors[0] = Multivector._raw(chart, {ckey: Fraction(1)}) * factors[0]
    return Multivector._raw(chart, {ckey: Fraction(1)}), factors


def _wedge_all(chart: Chart, factors) -> Multivector:
    out = Multivector.constant(chart)
    for factor in factors:
        out = out * factor
    return out


def classical_schouten(A: GradedElement, B: GradedElement) -> Multivector:
    """Textbook Schouten-Nijenhuis bracket on an even chart (m|0).

    For decomposable arguments ``[X1^..^Xp, Y1^..^Yq]`` is the sum of
    ``(-1)^(i+j) [Xi, Yj] ^ X1..^Xi..^Xp ^ Y1..^Yj..^Yq``, and
    ``[X1^..^Xp, f]`` is the sum of ``(-1)^(p-i) Xi(f) X1..^Xi..^Xp``.
    """
    A, B = as_multivector(A), as_multivector(B)
    chart = A.chart
    if chart.n:
        raise ValueError("the classical bracket needs a chart without odd coordinates")
    out = Multivector.zero(chart)
    for ka, ca in A.items():
        _, xs = _classical_factors(chart, ka)
        for kb, cb in B.items():
            fb, ys = _classical_factors(chart, kb)
            p, q = len(xs), len(ys)
            acc = Multivector.zero(chart)
            if p == 0 and q == 0:
                continue
            if p == 0:
                # [f, Y] = -(-1)^(q-1) [Y, f]
                value = classical_schouten(_unit(chart, kb), _unit(chart, ka))
                value = value.scale(-1 if (q - 1) % 2 == 0 else 1)
                out = out + value.scale(ca * cb)
                continue
            if q == 0:
                for i, X in enumerate(xs, start=1):
                    rest = xs[:i - 1] + xs[i:]
                    term = as_multivector(apply_vector(X, fb.function_part())) * _wedge_all(chart, rest)
                    acc = acc + term.scale(-1 if (i + p) % 2 else 1)
                out = out + acc.scale(ca * cb)
                continue
            for i, X in enumerate(xs, start=1):
                for j, Y in enumerate(ys, start=1):
                    rest = xs[:i - 1] + xs[i:] + ys[:j - 1] + ys[j:]
                    term = vector_commutator(X, Y) * _wedge_all(chart, rest)
                    acc = acc + term.scale(-1 if (i + j) % 2 else 1)
            out = out + acc.scale(ca * cb)
    return out
