"""Canonical text and JSON rendering of superfunctions, multivectors and forms."""

from __future__ import annotations

import json
from fractions import Fraction

from .._core import bits, key_bidegree
from ..grassmann import MIXED, GradedElement


def _letter_prefix(elem: GradedElement) -> str:
    return "d" if elem.kind == "form" else "D"


def term_sort_key(key, word_ghost):
    exps, t, w, o = key
    letters = [(0, i) for i in bits(w)]
    for j, c in enumerate(o, start=1):
        letters.extend([(1, j)] * c)
    p, _ = key_bidegree(key, word_ghost)
    degree = sum(exps) + t.bit_count()
    return (p, letters, degree, tuple(-e for e in exps), list(bits(t)))


def term_factors(elem: GradedElement, key) -> tuple:
    exps, t, w, o = key
    coef_factors = []
    for i, e in enumerate(exps, start=1):
        coef_factors.extend([f"x{i}"] * e)
    coef_factors.extend(f"th{j}" for j in bits(t))
    prefix = _letter_prefix(elem)
    word = [f"{prefix}x{i}" for i in bits(w)]
    for j, c in enumerate(o, start=1):
        word.extend([f"{prefix}th{j}"] * c)
    return coef_factors, word


def _format_coef(coef: Fraction) -> str:
    if coef.denominator == 1:
        return str(coef.numerator)
    return f"{coef.numerator}/{coef.denominator}"


def format_value(elem: GradedElement) -> str:
    if not elem:
        return "0"
    pieces = []
    keys = sorted(elem.items(), key=lambda kc: term_sort_key(kc[0], elem.WORD_GHOST))
    for n, (key, coef) in enumerate(keys):
        coef_factors, word = term_factors(elem, key)
        body = "*".join(coef_factors)
        if word:
            body = f"{body}*{' ^ '.join(word)}" if body else " ^ ".join(word)
        magnitude = abs(coef)
        if not body:
            text = _format_coef(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{_format_coef(magnitude)}*{body}"
        if n == 0:
            pieces.append(f"-{text}" if coef < 0 else text)
        else:
            pieces.append(f" - {text}" if coef < 0 else f" + {text}")
    return "".join(pieces)


def format_bidegree(elem: GradedElement) -> str:
    deg = elem.bidegree()
    return "mixed" if deg == MIXED else f"({deg[0]},{deg[1]})"


def to_json_dict(elem: GradedElement) -> dict:
    deg = elem.bidegree()
    word_field = "coword" if elem.kind == "form" else "word"
    terms = []
    for key, coef in sorted(elem.items(), key=lambda kc: term_sort_key(kc[0], elem.WORD_GHOST)):
        exps, t, w, o = key
        odd_word = []
        for j, c in enumerate(o, start=1):
            odd_word.extend([j] * c)
        terms.append({
            "coef": f"{coef.numerator}/{coef.denominator}",
            "even": list(exps),
            "odd": list(bits(t)),
            word_field: {"even": list(bits(w)), "odd": odd_word},
        })
    return {
        "chart": [elem.chart.m, elem.chart.n],
        "kind": elem.kind,
        "bidegree": "mixed" if deg == MIXED else list(deg),
        "terms": terms,
    }


def to_json(elem: GradedElement) -> str:
    return json.dumps(to_json_dict(elem), sort_keys=True)


def from_json_dict(data: dict) -> GradedElement:
    from .._core import Chart
    from ..calculus import GradedForm, Multivector
    from ..grassmann import Superfunction

    chart = Chart(*data["chart"])
    kind = data.get("kind")
    if kind is None:
        kind = "form" if any("coword" in t for t in data["terms"]) else "multivector"
    cls = {"function": Superfunction, "multivector": Multivector, "form": GradedForm}[kind]
    word_field = "coword" if kind == "form" else "word"
    terms = {}
    for term in data["terms"]:
        t = sum(1 << (j - 1) for j in term["odd"])
        word = term.get(word_field, {"even": [], "odd": []})
        w = sum(1 << (i - 1) for i in word["even"])
        o = [0] * chart.n
        for j in word["odd"]:
            o[j - 1] += 1
        terms[(tuple(term["even"]), t, w, tuple(o))] = Fraction(term["coef"])
    return cls(chart, terms)
