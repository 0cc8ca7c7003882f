"""Named, seeded property suites packaging every identity of the library."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .._core import Chart
from ..brackets import (
    classical_schouten,
    gsn_leibniz,
    gsn_operator,
    ks_bracket,
    md_apply,
    md_star,
    phi,
    phi_check,
    phi_inverse,
)
from ..bv import (
    Divergence,
    GeneratingOperator,
    delta_commutes_with_insertion,
    delta_extend,
    delta_oracle,
    divergence_apply,
    generating_defect,
)
from ..calculus import (
    Multivector,
    Operator,
    add_bidegrees,
    apply_vector,
    as_multivector,
    iota_exact,
    iota_operator,
    lie,
    lie_operator,
    op_commutator,
    order_at_most,
    pairing,
)
from ..grassmann import GradedElement, Superfunction, coefficient_partial, coordinate
from ..koszul import (
    eq14_defect,
    eq15_defect,
    eq16_defect,
    jacobi_defect,
    koszul_bracket,
    phi as koszul_phi,
    phi_vanishes,
    probe_library,
)
from .parser import parse
from .samplers import (
    sample_even_function,
    sample_form,
    sample_multivector,
    sample_superfunction,
)

SUITES = (
    "gsn-axioms",
    "gsn-route-equivalence",
    "ks-axioms",
    "phi-correspondence",
    "divergence-axiom",
    "delta-generating",
    "delta-insertion",
    "delta-route-equivalence",
    "koszul",
    "operator-order",
    "classical-limit",
)

# suites whose identities are stated up to cohomological degree 4
_DEGREE_FOUR = {"gsn-route-equivalence", "delta-generating", "delta-insertion", "delta-route-equivalence"}


class SuiteError(ValueError):
    """Unknown suite or invalid configuration."""


@dataclass(frozen=True)
class SuiteConfig:
    chart: Chart = Chart(2, 2)
    max_cohom: Optional[int] = None
    max_coeff_degree: int = 2
    samples: int = 200
    probe_degree: int = 3

    def validate(self) -> None:
        if self.samples < 1:
            raise SuiteError("samples must be positive")
        if self.max_coeff_degree < 0 or self.probe_degree < 0:
            raise SuiteError("degree bounds must be non-negative")
        if self.max_cohom is not None and self.max_cohom < 0:
            raise SuiteError("max_cohom must be non-negative")

    def describe(self) -> str:
        return (f"chart=({self.chart.m}|{self.chart.n}) max_cohom={self.max_cohom} "
                f"max_degree={self.max_coeff_degree} samples={self.samples} "
                f"probe_degree={self.probe_degree}")


@dataclass
class CheckResult:
    identity: str
    cases: int = 0
    failures: int = 0
    counterexample: Optional[Dict[str, str]] = None
    asserted: bool = True
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.asserted or self.failures == 0


@dataclass
class SuiteReport:
    name: str
    seed: int
    config: SuiteConfig
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def text(self) -> str:
        lines = [f"suite: {self.name}", f"seed: {self.seed}", f"config: {self.config.describe()}"]
        for c in self.checks:
            status = "INFO" if not c.asserted else ("PASS" if c.passed else "FAIL")
            line = f"{status} {c.identity} {c.cases - c.failures}/{c.cases}"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
            if c.counterexample and c.asserted:
                for key, value in c.counterexample.items():
                    lines.append(f"    {key}: {value}")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "config": {
                "chart": [self.config.chart.m, self.config.chart.n],
                "max_cohom": self.config.max_cohom,
                "max_degree": self.config.max_coeff_degree,
                "samples": self.config.samples,
                "probe_degree": self.config.probe_degree,
            },
            "checks": [
                {
                    "identity": c.identity,
                    "cases": c.cases,
                    "failures": c.failures,
                    "passed": c.passed,
                    "asserted": c.asserted,
                    "note": c.note,
                    "counterexample": c.counterexample,
                }
                for c in self.checks
            ],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


class _Context:
    def __init__(self, name: str, seed: int, config: SuiteConfig):
        self.name = name
        self.seed = seed
        self.config = config
        self.chart = config.chart
        self.max_cohom = config.max_cohom
        self.deg = config.max_coeff_degree
        self.samples = config.samples
        self.report = SuiteReport(name, seed, config)

    def rng(self, identity: str) -> random.Random:
        return random.Random(f"{self.name}/{identity}/{self.seed}")

    def check(self, identity: str, cases: Iterable[Tuple[Dict[str, GradedElement], object, object]],
              note: str = "") -> CheckResult:
        """Compare lhs with rhs on every case; keep the first counterexample."""
        result = CheckResult(identity, note=note)
        for inputs, lhs, rhs in cases:
            result.cases += 1
            if lhs != rhs:
                result.failures += 1
                if result.counterexample is None:
                    result.counterexample = {k: str(v) for k, v in inputs.items()}
                    result.counterexample["lhs"] = str(lhs)
                    result.counterexample["rhs"] = str(rhs)
        self.report.checks.append(result)
        return result

    def fixed(self, identity: str, lhs, rhs) -> CheckResult:
        return self.check(identity, [({}, lhs, rhs)])

    # samplers with suite-wide bounds

    def multivector(self, rng, max_p=None, bidegree=None) -> Multivector:
        max_p = self.max_cohom if max_p is None else max_p
        return as_multivector(sample_multivector(self.chart, max_p, self.deg, rng, bidegree=bidegree))

    def function(self, rng) -> Superfunction:
        return sample_superfunction(self.chart, self.deg, rng)

    def split(self, rng, parts: int, total: Optional[int] = None) -> List[int]:
        """Random cohomological degrees for `parts` arguments with sum <= total."""
        total = self.max_cohom if total is None else total
        out = []
        for _ in range(parts):
            p = rng.randint(0, total)
            out.append(p)
            total -= p
        rng.shuffle(out)
        return out

    def tuples(self, identity: str, parts: int, count: Optional[int] = None, total=None):
        rng = self.rng(identity)
        for _ in range(self.samples if count is None else count):
            degrees = self.split(rng, parts, total)
            yield [self.multivector(rng, p, bidegree=None) if p else
                   as_multivector(self.function(rng)) for p in degrees]


def _sign(exponent: int) -> int:
    return -1 if exponent & 1 else 1


def _deg(A: GradedElement):
    return A.bidegree()


# -- GSN -------------------------------------------------------------------------


def _gsn_axioms(ctx: _Context) -> None:
    triples = max(1, ctx.samples // 2)

    def antisymmetry():
        for A, B in ctx.tuples("antisymmetry", 2):
            a, b = _deg(A), _deg(B)
            yield {"A": A, "B": B}, gsn_leibniz(A, B), gsn_leibniz(B, A).scale(
                -_sign((a[0] - 1) * (b[0] - 1) + a[1] * b[1]))

    def leibniz():
        for A, B, C in ctx.tuples("leibniz", 3, triples):
            a, b = _deg(A), _deg(B)
            rhs = gsn_leibniz(A, B) * C + (B * gsn_leibniz(A, C)).scale(
                _sign((a[0] - 1) * b[0] + a[1] * b[1]))
            yield {"A": A, "B": B, "C": C}, gsn_leibniz(A, B * C), rhs

    def jacobi():
        for A, B, C in ctx.tuples("jacobi", 3, triples):
            a, b = _deg(A), _deg(B)
            rhs = gsn_leibniz(gsn_leibniz(A, B), C) + gsn_leibniz(B, gsn_leibniz(A, C)).scale(
                _sign((a[0] - 1) * (b[0] - 1) + a[1] * b[1]))
            yield {"A": A, "B": B, "C": C}, gsn_leibniz(A, gsn_leibniz(B, C)), rhs

    def bidegree():
        for A, B in ctx.tuples("bidegree", 2):
            value = gsn_leibniz(A, B)
            a, b = _deg(A), _deg(B)
            expected = (a[0] + b[0] - 1, a[1] + b[1])
            yield {"A": A, "B": B}, (value.bidegree() if value else expected), expected

    def self_bracket():
        rng = ctx.rng("self-bracket")
        count = 0
        while count < ctx.samples:
            A = ctx.multivector(rng)
            a = _deg(A)
            if ((a[0] - 1) ** 2 + a[1] ** 2) % 2:
                continue
            count += 1
            yield {"A": A}, gsn_leibniz(A, A), Multivector.zero(ctx.chart)

    def decomposition():
        for A, B in ctx.tuples("decomposition", 2):
            yield {"A": A, "B": B}, gsn_leibniz(A, B, "first"), gsn_leibniz(A, B, "last")

    def lie_commutator():
        rng = ctx.rng("lie-commutator")
        for _ in range(max(1, ctx.samples // 10)):
            A = ctx.multivector(rng, 1 + rng.randint(0, 1))
            B = ctx.multivector(rng, 1)
            lhs_op = op_commutator(lie_operator(A), lie_operator(B))
            C = gsn_leibniz(A, B)
            lam = sample_form(ctx.chart, 2, ctx.deg, rng)
            yield {"A": A, "B": B, "lambda": lam}, lhs_op(lam), lie(C, lam)

    ctx.check("antisymmetry", antisymmetry())
    ctx.check("right-leibniz", leibniz())
    ctx.check("jacobi", jacobi())
    ctx.check("bidegree-contract", bidegree())
    ctx.check("self-bracket-vanishing", self_bracket())
    ctx.check("decomposition-independence", decomposition())
    ctx.check("lie-derivative-commutator", lie_commutator())


def _gsn_route_equivalence(ctx: _Context) -> None:
    def cases():
        for A, B in ctx.tuples("route", 2):
            yield {"A": A, "B": B}, gsn_operator(A, B), gsn_leibniz(A, B)

    ctx.check("operator-route-equals-leibniz-route", cases())
    P = lambda s: as_multivector(parse(s, ctx.chart))
    if ctx.chart.m >= 2:
        ctx.fixed("fixed [x1*Dx2, x2*Dx1]", gsn_operator(P("x1*Dx2"), P("x2*Dx1")), P("x1*Dx1 - x2*Dx2"))


# -- Krasil'shchik calculus ----------------------------------------------------------


def _ks_axioms(ctx: _Context) -> None:
    triples = max(1, ctx.samples // 2)

    def antisymmetry():
        for F, G in ctx.tuples("ks-antisymmetry", 2):
            f, g = _deg(F), _deg(G)
            yield {"F": F, "G": G}, ks_bracket(F, G), ks_bracket(G, F).scale(
                -_sign(f[1] * g[1] + (f[0] - 1) * (g[0] - 1)))

    def leibniz():
        for F, G, H in ctx.tuples("ks-leibniz", 3, triples):
            f, g = _deg(F), _deg(G)
            rhs = md_star(ks_bracket(F, G), H) + md_star(G, ks_bracket(F, H)).scale(
                _sign(f[1] * g[1] + (f[0] - 1) * g[0]))
            yield {"F": F, "G": G, "H": H}, ks_bracket(F, md_star(G, H)), rhs

    def jacobi():
        for F, G, H in ctx.tuples("ks-jacobi", 3, triples):
            f, g = _deg(F), _deg(G)
            rhs = ks_bracket(ks_bracket(F, G), H) + ks_bracket(G, ks_bracket(F, H)).scale(
                _sign(f[1] * g[1] + (f[0] - 1) * (g[0] - 1)))
            yield {"F": F, "G": G, "H": H}, ks_bracket(F, ks_bracket(G, H)), rhs

    def star_commutative():
        for F, G in ctx.tuples("star-commutativity", 2):
            f, g = _deg(F), _deg(G)
            yield {"F": F, "G": G}, md_star(F, G), md_star(G, F).scale(_sign(f[1] * g[1] + f[0] * g[0]))

    def star_associative():
        for F, G, H in ctx.tuples("star-associativity", 3, triples):
            yield {"F": F, "G": G, "H": H}, md_star(md_star(F, G), H), md_star(F, md_star(G, H))

    def apply_derivation():
        rng = ctx.rng("apply-derivation")
        for _ in range(ctx.samples):
            F = ctx.multivector(rng, bidegree=None, max_p=max(1, ctx.max_cohom))
            while F.cohomological_degree() == 0:
                F = ctx.multivector(rng, max_p=max(1, ctx.max_cohom))
            a, b = ctx.function(rng), ctx.function(rng)
            sign = _sign(a.parity() * _deg(F)[1])
            rhs = md_apply(F, a) * b + (a * md_apply(F, b)).scale(sign)
            yield {"F": F, "a": a, "b": b}, md_apply(F, a * b), rhs

    def alternation():
        rng = ctx.rng("apply-alternation")
        count = 0
        while count < ctx.samples:
            F = ctx.multivector(rng, max_p=max(2, ctx.max_cohom))
            if F.cohomological_degree() < 2:
                continue
            count += 1
            a, b = ctx.function(rng), ctx.function(rng)
            lhs = md_apply(md_apply(F, a), b)
            rhs = md_apply(md_apply(F, b), a).scale(-_sign(a.parity() * b.parity()))
            yield {"F": F, "a": a, "b": b}, lhs, rhs

    ctx.check("ks-antisymmetry", antisymmetry())
    ctx.check("ks-leibniz", leibniz())
    ctx.check("ks-jacobi", jacobi())
    ctx.check("star-graded-commutativity", star_commutative())
    ctx.check("star-associativity", star_associative())
    ctx.check("apply-derivation-law", apply_derivation())
    ctx.check("apply-graded-alternation", alternation())


def _phi_correspondence(ctx: _Context) -> None:
    star_signs: Dict[tuple, set] = {}
    bracket_signs: Dict[tuple, set] = {}
    pairs = list(ctx.tuples("phi", 2))

    def record(table, key, sign):
        table.setdefault(key, set()).add(sign)

    reports = []
    for F, G in pairs:
        rep = phi_check(F, G)
        reports.append((F, G, rep))
        key = (_deg(F), _deg(G))
        record(star_signs, key, rep.star_sign)
        record(bracket_signs, key, rep.bracket_sign)

    def uniform(table, attr):
        pattern = {k: v for k, v in table.items()}
        for F, G, rep in reports:
            signs = pattern[(_deg(F), _deg(G))]
            # a correspondence sign must exist and be the same for every pair of that bidegree
            ok = None not in signs and len(signs) == 1
            value = getattr(rep, attr)
            yield {"F": F, "G": G}, (value if ok else f"non-uniform {sorted(map(str, signs))}"), value

    def exact(attr):
        for F, G, rep in reports:
            yield {"F": F, "G": G}, getattr(rep, attr), 1

    def round_trip():
        for F, _ in pairs:
            yield {"F": F}, phi_inverse(phi(F)), F

    found = sorted({s for v in star_signs.values() for s in v}, key=str)
    ctx.check("star-vs-wedge-uniform-sign", uniform(star_signs, "star_sign"), note=f"signs {found}")
    found = sorted({s for v in bracket_signs.values() for s in v}, key=str)
    ctx.check("ks-vs-gsn-uniform-sign", uniform(bracket_signs, "bracket_sign"), note=f"signs {found}")
    ctx.check("star-equals-wedge", exact("star_sign"))
    ctx.check("ks-equals-gsn", exact("bracket_sign"))
    ctx.check("phi-round-trip", round_trip())


# -- divergence and Δ -------------------------------------------------------------


def _vector(ctx: _Context, rng) -> Multivector:
    return ctx.multivector(rng, bidegree=(1, rng.randint(-1, 1)))


def _divergence_axiom(ctx: _Context) -> None:
    twist_rng = ctx.rng("twists")
    twists = [None] + [sample_even_function(ctx.chart, ctx.deg, twist_rng) for _ in range(5)]
    for n, w in enumerate(twists):
        dv = Divergence(w)

        def cases(dv=dv, n=n):
            rng = ctx.rng(f"axiom-{n}")
            for _ in range(ctx.samples):
                a, D = ctx.function(rng), _vector(ctx, rng)
                sign = _sign(a.parity() * _deg(D)[1])
                lhs = divergence_apply(dv, a * D)
                rhs = a * divergence_apply(dv, D) + apply_vector(D, a).function_part().scale(sign)
                yield {"a": a, "D": D}, lhs, rhs

        label = "coordinate" if w is None else f"twist {w}"
        ctx.check(f"divergence-axiom[{label}]", cases())
    dv0 = Divergence()
    P = lambda s: parse(s, ctx.chart)
    if ctx.chart.m:
        ctx.fixed("fixed div(x1*Dx1) = 1", divergence_apply(dv0, P("x1*Dx1")), 1)
        ctx.fixed("fixed div(Dx1) = 0", divergence_apply(dv0, P("Dx1")), 0)
    if ctx.chart.n:
        ctx.fixed("fixed div(th1*Dth1) = -1", divergence_apply(dv0, P("th1*Dth1")), -1)


def _generators(ctx: _Context):
    rng = ctx.rng("generator-twist")
    twist = sample_even_function(ctx.chart, ctx.deg, rng)
    return GeneratingOperator(), GeneratingOperator(Divergence(twist)), twist


def _delta_generating(ctx: _Context) -> None:
    gen0, genw, twist = _generators(ctx)

    def defect(gen, label):
        for A, B in ctx.tuples(f"defect-{label}", 2):
            yield {"A": A, "B": B}, generating_defect(gen, A, B), Multivector.zero(ctx.chart)

    def bidegree():
        rng = ctx.rng("delta-bidegree")
        for _ in range(ctx.samples):
            C = ctx.multivector(rng)
            value = delta_extend(gen0, C)
            c = _deg(C)
            expected = (c[0] - 1, c[1])
            yield {"C": C}, (value.bidegree() if value else expected), expected

    def low_degrees():
        rng = ctx.rng("delta-low")
        for _ in range(ctx.samples):
            f = ctx.function(rng)
            X = _vector(ctx, rng)
            yield {"f": f}, delta_extend(gen0, f), Multivector.zero(ctx.chart)
            yield {"X": X}, delta_extend(gen0, X), as_multivector(-divergence_apply(gen0.divergence, X))

    def squared():
        rng = ctx.rng("delta-squared")
        for _ in range(ctx.samples):
            C = ctx.multivector(rng)
            yield {"C": C}, delta_extend(gen0, delta_extend(gen0, C)), Multivector.zero(ctx.chart)

    ctx.check("generating-defect[coordinate]", defect(gen0, "coordinate"))
    ctx.check("generating-defect[twisted]", defect(genw, "twisted"), note=f"w = {twist}")
    ctx.check("delta-bidegree", bidegree())
    ctx.check("delta-low-degrees", low_degrees())
    sq = ctx.check("delta-squared-zero", squared(), note="measured only")
    sq.asserted = False
    if ctx.chart.m >= 2:
        P = lambda s: parse(s, ctx.chart)
        ctx.fixed("fixed delta(x1*Dx1 ^ Dx2) = -Dx2", delta_extend(gen0, P("x1*Dx1 ^ Dx2")), P("-Dx2"))


def _delta_insertion(ctx: _Context) -> None:
    gen0, genw, twist = _generators(ctx)

    def commutes(gen, label):
        rng = ctx.rng(f"insertion-{label}")
        for _ in range(ctx.samples):
            a = ctx.function(rng)
            C = ctx.multivector(rng)
            yield {"a": a, "C": C}, delta_commutes_with_insertion(gen, a, C), Multivector.zero(ctx.chart)

    def eq10():
        rng = ctx.rng("eq10")
        for _ in range(ctx.samples):
            a = ctx.function(rng)
            A, B = [ctx.multivector(rng, p) for p in ctx.split(rng, 2)]
            A1, A2 = _deg(A)
            rhs = iota_exact(a, A) * B + (A * iota_exact(a, B)).scale(_sign(A1 + A2 * a.parity()))
            yield {"a": a, "A": A, "B": B}, iota_exact(a, A * B), rhs

    def eq11():
        rng = ctx.rng("eq11")
        for _ in range(ctx.samples):
            a = ctx.function(rng)
            A, B = [ctx.multivector(rng, p) for p in ctx.split(rng, 2, ctx.max_cohom + 1)]
            A1, A2 = _deg(A)
            rhs = (gsn_leibniz(iota_exact(a, A), B)
                   + gsn_leibniz(A, iota_exact(a, B)).scale(_sign(A1 - 1 + A2 * a.parity())))
            yield {"a": a, "A": A, "B": B}, iota_exact(a, gsn_leibniz(A, B)), rhs

    ctx.check("delta-commutes-with-insertion[coordinate]", commutes(gen0, "coordinate"))
    ctx.check("delta-commutes-with-insertion[twisted]", commutes(genw, "twisted"), note=f"w = {twist}")
    ctx.check("insertion-derivation-of-wedge", eq10())
    ctx.check("insertion-derivation-of-bracket", eq11())


def _delta_route_equivalence(ctx: _Context) -> None:
    gen0, genw, twist = _generators(ctx)

    def cases(gen, split, label):
        rng = ctx.rng(f"delta-route-{label}")
        for _ in range(ctx.samples):
            C = ctx.multivector(rng)
            yield {"C": C}, delta_extend(gen, C), delta_oracle(gen, C, split)

    ctx.check("extend-equals-oracle[first]", cases(gen0, "first", "first"))
    ctx.check("extend-equals-oracle[last]", cases(gen0, "last", "last"))
    ctx.check("extend-equals-oracle[twisted]", cases(genw, "first", "twisted"), note=f"w = {twist}")


# -- Koszul -------------------------------------------------------------------------


def random_operator(chart: Chart, rng: random.Random, max_coeff_degree: int, max_order: int = 3) -> Tuple[Operator, int]:
    """``mu_f o d_zeta1 o ... o d_zetar`` on superfunctions with random f and directions."""
    directions = [rng.choice(chart.directions()) for _ in range(rng.randint(0, max_order))]
    f = sample_superfunction(chart, max_coeff_degree, rng, 2)
    deg = f.bidegree()
    for kind, _ in directions:
        if kind == "th":
            deg = add_bidegrees(deg, (0, -1))

    def apply(v, f=f, directions=tuple(directions)):
        for kind, index in reversed(directions):
            v = coefficient_partial(v, kind, index)
        return f * v

    name = f"mu[{f}]" + "".join(f" d_{k}{i}" for k, i in directions)
    return Operator("function", deg, apply, name), len(directions)


def _koszul(ctx: _Context) -> None:
    chart = ctx.chart
    if chart.m < 2 or chart.n < 2:
        raise SuiteError("the koszul suite needs a chart with m >= 2 and n >= 2")
    library = probe_library(chart)
    triple_count = max(1, ctx.samples // 4)

    def args(rng, carrier, k):
        if carrier == "function":
            return [ctx.function(rng) for _ in range(k)]
        if carrier == "multivector":
            return [ctx.multivector(rng, p) for p in ctx.split(rng, k, 2)]
        return [sample_form(chart, 1, 1, rng, 2) for _ in range(k)]

    def operators(rng, order_bound=3, odd_only=False):
        pool = []
        for pr in library:
            pool.append((pr.operator, pr.order))
        while True:
            if rng.random() < 0.5:
                op, order = rng.choice(pool)
            else:
                op, order = random_operator(chart, rng, ctx.deg, order_bound)
            if order > order_bound:
                continue
            if odd_only and not pairing(op.bidegree, op.bidegree) & 1:
                continue
            yield op

    def eq14():
        rng = ctx.rng("eq14")
        ops = operators(rng)
        for _ in range(triple_count):
            D = next(ops)
            a, b, c = args(rng, D.carrier, 3)
            yield {"D": D.name, "a": a, "b": b, "c": c}, eq14_defect(D, a, b, c), 0

    def eq15():
        rng = ctx.rng("eq15")
        ops = operators(rng, odd_only=True)
        for _ in range(ctx.samples):
            D = next(ops)
            a, b = args(rng, D.carrier, 2)
            yield {"D": D.name, "a": a, "b": b}, eq15_defect(D, a, b), 0

    def eq16():
        rng = ctx.rng("eq16")
        ops = operators(rng, order_bound=2)
        for _ in range(triple_count):
            D = next(ops)
            a, b, c = args(rng, D.carrier, 3)
            yield {"D": D.name, "a": a, "b": b, "c": c}, eq16_defect(D, a, b, c), 0

    def phi1():
        rng = ctx.rng("phi1")
        ops = operators(rng)
        for _ in range(ctx.samples):
            D = next(ops)
            (a,) = args(rng, D.carrier, 1)
            value = koszul_phi(D, a)
            a = value._raw(chart, dict(a.items()))  # same terms, carrier type
            yield {"D": D.name, "a": a}, value, D(a) - D(value.constant(chart)) * a

    def jacobi():
        rng = ctx.rng("jacobi")
        probes = [pr for pr in library if pr.jacobi]
        for n in range(triple_count):
            D = probes[n % len(probes)].operator
            a, b, c = args(rng, D.carrier, 3)
            yield {"D": D.name, "a": a, "b": b, "c": c}, jacobi_defect(D, a, b, c), 0

    def delta_bracket():
        rng = ctx.rng("delta-bracket")
        D = GeneratingOperator().operator()
        for _ in range(ctx.samples):
            A, B = args(rng, "multivector", 2)
            yield {"A": A, "B": B}, koszul_bracket(D, A, B), gsn_leibniz(A, B)

    def order_link():
        # the equivalence can only fail next to the true order
        for pr in library:
            pd = _probe_degree(ctx, pr.operator)
            for q in range(max(0, pr.order - 1), pr.order + 1):
                yield ({"D": pr.name, "q": q},
                       order_at_most(pr.operator, q, chart=chart, probe_degree=pd),
                       phi_vanishes(pr.operator, q + 1, chart))

    ctx.check("phi3-expansion", eq14())
    ctx.check("derived-bracket-symmetry[odd D]", eq15())
    ctx.check("derived-bracket-leibniz[order <= 2]", eq16())
    ctx.check("phi1-formula", phi1())
    ctx.check("derived-bracket-jacobi[D(1)=0, D^2 order <= 2]", jacobi())
    ctx.check("delta-derived-bracket-equals-gsn", delta_bracket())
    ctx.check("order-iff-phi-vanishing", order_link())
    x1 = coordinate(chart, "x", 1)
    d2 = library[4].operator
    ctx.fixed("fixed phi2[d_x1 d_x1](x1, x1) = 2", koszul_phi(d2, x1, x1), 2)


def _probe_degree(ctx: _Context, D: Operator) -> int:
    # forms and multivectors have many more monomials per degree
    pd = ctx.config.probe_degree
    return pd if D.carrier == "function" else min(pd, 2)


def _operator_order(ctx: _Context) -> None:
    chart = ctx.chart
    if chart.m < 2 or chart.n < 2:
        raise SuiteError("the operator-order suite needs a chart with m >= 2 and n >= 2")
    library = probe_library(chart)

    def exact_order():
        for pr in library:
            pd = _probe_degree(ctx, pr.operator)
            upper = order_at_most(pr.operator, pr.order, chart=chart, probe_degree=pd)
            lower = pr.order == 0 or not order_at_most(pr.operator, pr.order - 1, chart=chart,
                                                       probe_degree=pd)
            yield {"D": pr.name}, (upper, lower), (True, True)

    def insertion_order():
        rng = ctx.rng("insertion-order")
        for _ in range(max(1, ctx.samples // 20)):
            A = ctx.multivector(rng, bidegree=(rng.randint(1, 2), rng.randint(-1, 1)))
            if not A:
                continue
            q = A.cohomological_degree()
            op = iota_operator(A)
            pd = _probe_degree(ctx, op)
            yield ({"A": A}, (order_at_most(op, q, chart=chart, probe_degree=pd),
                              order_at_most(op, q - 1, chart=chart, probe_degree=pd)),
                   (True, False))

    ctx.check("probe-library-exact-order", exact_order())
    ctx.check("insertion-order-equals-degree", insertion_order())


def _classical_checks(ctx: _Context) -> None:
    def cases(fn, identity):
        for A, B in ctx.tuples(identity, 2):
            yield {"A": A, "B": B}, fn(A, B), classical_schouten(A, B)

    ctx.check("gsn-equals-classical", cases(gsn_leibniz, "gsn"))
    ctx.check("operator-route-equals-classical", cases(gsn_operator, "operator"))
    ctx.check("ks-equals-classical", cases(ks_bracket, "ks"))
    if ctx.chart.m >= 2:
        P = lambda s: as_multivector(parse(s, ctx.chart))
        A, B = P("x1*Dx2"), P("x2*Dx1")
        expected = P("x1*Dx1 - x2*Dx2")
        ctx.fixed("fixed [x1*Dx2, x2*Dx1] (gsn)", gsn_leibniz(A, B), expected)
        ctx.fixed("fixed [x1*Dx2, x2*Dx1] (ks)", ks_bracket(A, B), expected)
        ctx.fixed("fixed [x1*Dx2, x2*Dx1] (classical)", classical_schouten(A, B), expected)


_RUNNERS: Dict[str, Callable[[_Context], None]] = {
    "gsn-axioms": _gsn_axioms,
    "gsn-route-equivalence": _gsn_route_equivalence,
    "ks-axioms": _ks_axioms,
    "phi-correspondence": _phi_correspondence,
    "divergence-axiom": _divergence_axiom,
    "delta-generating": _delta_generating,
    "delta-insertion": _delta_insertion,
    "delta-route-equivalence": _delta_route_equivalence,
    "koszul": _koszul,
    "operator-order": _operator_order,
    "classical-limit": _classical_checks,
}


def run_suite(name: str, seed: int, config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Run a named suite; the report depends only on (name, seed, config)."""
    if name not in _RUNNERS:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    config = config or SuiteConfig()
    config.validate()
    if config.max_cohom is None:
        config = replace(config, max_cohom=4 if name in _DEGREE_FOUR else 3)
    if name == "classical-limit" and config.chart.n:
        config = replace(config, chart=Chart(config.chart.m, 0))
    ctx = _Context(name, seed, config)
    _RUNNERS[name](ctx)
    return ctx.report
