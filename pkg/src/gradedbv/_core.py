"""Sparse term algebra shared by superfunctions, multivectors and forms.

Every value lives in a free bigraded commutative algebra generated by

    x_i   (0, 0)      th_j  (0, 1)
    Dx_i  (1, 0)      Dth_j (1, -1)     (multivectors)
    dx_i  (1, 0)      dth_j (1, 1)      (forms)

where two homogeneous generators commute up to ``(-1)**<a, b>`` with the
pairing ``<(p1, p2), (q1, q2)> = p1*q1 + p2*q2``.  A term is stored in the
canonical order ``x^e th_S | E | O`` (coefficient on the left, then the
even-direction letters, then the odd-direction letters) and every sign that
arises from reordering is folded into the rational coefficient.

A term key is the 4-tuple ``(exps, th_mask, even_mask, odd_counts)``:

* ``exps``        tuple of ``m`` exponents of the even coordinates,
* ``th_mask``     bit ``j-1`` set when th_j occurs,
* ``even_mask``   bit ``i-1`` set when Dx_i (or dx_i) occurs,
* ``odd_counts``  tuple of ``n`` multiplicities of Dth_j (or dth_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, Optional, Tuple

Key = Tuple[Tuple[int, ...], int, int, Tuple[int, ...]]
Bidegree = Tuple[int, int]


class ChartMismatchError(ValueError):
    """Raised when values built on different charts are combined."""


@dataclass(frozen=True)
class Chart:
    """A split coordinate chart R^(m|n)."""

    even_count: int
    odd_count: int

    def __post_init__(self):
        if self.even_count < 0 or self.odd_count < 0:
            raise ValueError("chart dimensions must be non-negative")

    @property
    def m(self) -> int:
        return self.even_count

    @property
    def n(self) -> int:
        return self.odd_count

    @classmethod
    def parse(cls, text: str) -> "Chart":
        try:
            m, n = (int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"chart must look like 'm,n', got {text!r}") from None
        return cls(m, n)

    def __str__(self) -> str:
        return f"({self.m}|{self.n})"

    # coordinate directions are addressed as ("x", i) or ("th", j), 1-based
    def directions(self):
        return [("x", i) for i in range(1, self.m + 1)] + [
            ("th", j) for j in range(1, self.n + 1)
        ]

    def check_index(self, kind: str, index: int) -> None:
        bound = self.m if kind == "x" else self.n
        if not 1 <= index <= bound:
            raise IndexError(f"{kind}{index} is out of range on chart {self}")

    def zero_key(self) -> Key:
        return ((0,) * self.m, 0, 0, (0,) * self.n)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def merge_parity(a: int, b: int) -> int:
    """Parity of the pairs (i in a, j in b) with j < i, for bitmasks a, b."""
    s = 0
    while b:
        low = b & -b
        s += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return s & 1


def mul_keys(k1: Key, k2: Key) -> Optional[Tuple[Key, int]]:
    """Product of two canonical terms: ``(key, sign)`` or None when it vanishes."""
    e1, t1, w1, o1 = k1
    e2, t2, w2, o2 = k2
    if t1 & t2 or w1 & w2:
        return None
    n_o1 = sum(o1)
    # th_2 moves left past O_1 (pairing odd) and E_1 (pairing even); then E_2 past O_1
    parity = (t2.bit_count() + w2.bit_count()) * n_o1
    parity += merge_parity(t1, t2) + merge_parity(w1, w2)
    exps = tuple(a + b for a, b in zip(e1, e2))
    odd = tuple(a + b for a, b in zip(o1, o2))
    return (exps, t1 | t2, w1 | w2, odd), (-1 if parity & 1 else 1)


def key_bidegree(key: Key, word_ghost: int) -> Bidegree:
    _, t, w, o = key
    n_o = sum(o)
    return (w.bit_count() + n_o, t.bit_count() + word_ghost * n_o)


def bits(mask: int) -> Iterator[int]:
    """Yield the 1-based indices of the set bits of mask, increasing."""
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def add_into(target: Dict[Key, Fraction], key: Key, coef) -> None:
    value = target.get(key, 0) + coef
    if value:
        target[key] = value
    else:
        target.pop(key, None)
