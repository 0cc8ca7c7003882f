"""Seeded random samplers for canonical superfunctions, multivectors and forms."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Tuple

from .._core import Bidegree, Chart, Key, key_bidegree
from ..calculus import GradedForm, Multivector
from ..grassmann import Superfunction

COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def _random_word(chart: Chart, q: int, rng: random.Random) -> Optional[Tuple[int, Tuple[int, ...]]]:
    # without odd coordinates every letter must be even
    low = q if not chart.n else 0
    high = min(q, chart.m)
    if low > high:
        return None
    even = rng.randint(low, high)
    w = sum(1 << i for i in rng.sample(range(chart.m), even))
    o = [0] * chart.n
    for _ in range(q - even):
        o[rng.randrange(chart.n)] += 1
    return w, tuple(o)


def _random_key(chart: Chart, q: int, max_coeff_degree: int, rng: random.Random) -> Optional[Key]:
    word = _random_word(chart, q, rng)
    if word is None:
        return None
    total = rng.randint(0, max_coeff_degree)
    odd_count = rng.randint(0, min(total, chart.n))
    t = sum(1 << j for j in rng.sample(range(chart.n), odd_count))
    exps = [0] * chart.m
    if chart.m:
        for _ in range(total - odd_count):
            exps[rng.randrange(chart.m)] += 1
    return tuple(exps), t, word[0], word[1]


def _sample(cls, chart: Chart, max_p: int, max_coeff_degree: int, rng: random.Random,
            max_terms: int, bidegree: Optional[Bidegree] = None, homogeneous: bool = True):
    """Random element with at most ``max_terms`` terms.

    With ``homogeneous`` the first term fixes the bidegree (or ``bidegree``
    when given) and later terms are drawn by rejection.
    """
    ghost = cls.WORD_GHOST
    terms = {}
    target = bidegree
    attempts = 0
    n_terms = rng.randint(1, max_terms)
    while len(terms) < n_terms and attempts < 40 * n_terms:
        attempts += 1
        q = target[0] if target is not None else rng.randint(0, max_p)
        key = _random_key(chart, q, max_coeff_degree, rng)
        if key is None:
            continue
        deg = key_bidegree(key, ghost)
        if homogeneous:
            if target is None:
                target = deg
            elif deg != target:
                continue
        terms[key] = Fraction(rng.choice(COEFFICIENTS))
    return cls(chart, terms)


def sample_superfunction(chart: Chart, max_coeff_degree: int, rng: random.Random,
                         max_terms: int = 3, homogeneous: bool = True) -> Superfunction:
    return _sample(Superfunction, chart, 0, max_coeff_degree, rng, max_terms, homogeneous=homogeneous)


def sample_multivector(chart: Chart, max_p: int, max_coeff_degree: int, rng: random.Random,
                       max_terms: int = 3, homogeneous: bool = True, bidegree=None):
    """A canonical multivector with word length at most max_p (a Superfunction when max_p = 0)."""
    if max_p == 0 and bidegree is None:
        return sample_superfunction(chart, max_coeff_degree, rng, max_terms, homogeneous)
    return _sample(Multivector, chart, max_p, max_coeff_degree, rng, max_terms, bidegree, homogeneous)


def sample_form(chart: Chart, max_p: int, max_coeff_degree: int, rng: random.Random,
                max_terms: int = 3) -> GradedForm:
    return _sample(GradedForm, chart, max_p, max_coeff_degree, rng, max_terms)


def sample_even_function(chart: Chart, max_coeff_degree: int, rng: random.Random,
                         max_terms: int = 3) -> Superfunction:
    """Even superfunction (every term has an even number of odd factors)."""
    out = Superfunction.zero(chart)
    for _ in range(max_terms):
        f = sample_superfunction(chart, max_coeff_degree, rng, 1)
        if f.parity() == 0:
            out = out + f
    return out
