import pytest
from hypothesis import given

from conftest import C22, P, rng_of, seeds
from oracles import oracle_left_partial, oracle_product
from gradedbv import Chart, ChartMismatchError, MIXED, monomial
from gradedbv.cli.samplers import sample_superfunction
from gradedbv.grassmann import Superfunction, coordinate, sf_add, sf_ghost_degree, sf_mul, sf_partial


def f_of(seed, homogeneous=True):
    return sample_superfunction(C22, 2, rng_of(seed), 3, homogeneous)


class TestExamples:
    def test_additive_inverse(self):
        assert sf_add(P("x1"), P("-x1")) == 0

    def test_odd_anticommutation_cancels(self):
        assert sf_add(P("th1*th2"), P("th2*th1")) == 0

    def test_linearity(self):
        assert sf_add(P("x1 + th1"), P("x1 - th1")) == P("2*x1")

    def test_odd_square(self):
        assert sf_mul(P("th1"), P("th1")) == 0

    def test_swap_sign_in_coefficient(self):
        value = sf_mul(P("th2"), P("th1"))
        assert value == P("-th1*th2")
        assert str(value) == "-th1*th2"

    def test_square_of_sum(self):
        assert sf_mul(P("x1 + th1*th2"), P("x1 - th1*th2")) == P("x1*x1")

    def test_partials(self):
        assert sf_partial(("th", 1), P("th1*th2")) == P("th2")
        assert sf_partial(("th", 2), P("th1*th2")) == P("-th1")
        assert sf_partial(("x", 1), P("x1*x1*th1")) == P("2*x1*th1")

    def test_ghost_degree(self):
        assert sf_ghost_degree(P("th1*th2")) == 2
        assert sf_ghost_degree(P("x1*x1*x1")) == 0
        assert sf_ghost_degree(P("x1 + th1")) == MIXED
        assert sf_ghost_degree(Superfunction.zero(C22)) == 0


class TestErrors:
    def test_chart_mismatch(self):
        with pytest.raises(ChartMismatchError):
            sf_add(coordinate(C22, "x", 1), coordinate(Chart(1, 1), "x", 1))
        with pytest.raises(ChartMismatchError):
            sf_mul(coordinate(C22, "x", 1), coordinate(Chart(1, 1), "x", 1))

    def test_invalid_index(self):
        with pytest.raises(IndexError):
            sf_partial(("th", 3), P("th1"))
        with pytest.raises(IndexError):
            coordinate(C22, "x", 0)

    def test_mixed_parity(self):
        with pytest.raises(ValueError):
            P("x1 + th1").parity()


def test_monomial_factor_order():
    assert monomial(C22, (1, 0), (2, 1)) == P("-x1*th1*th2")


@given(seeds, seeds)
def test_product_matches_oracle(s1, s2):
    f, g = f_of(s1, False), f_of(s2, False)
    assert sf_mul(f, g) == oracle_product(f, g)


@given(seeds)
def test_left_partial_matches_oracle(s):
    f = f_of(s, False)
    for direction in C22.directions():
        assert sf_partial(direction, f) == oracle_left_partial(f, *direction)


@given(seeds, seeds)
def test_graded_commutativity(s1, s2):
    f, g = f_of(s1), f_of(s2)
    sign = -1 if f.parity() * g.parity() else 1
    assert f * g == (g * f).scale(sign)


@given(seeds, seeds, seeds)
def test_associativity_and_distributivity(s1, s2, s3):
    f, g, h = f_of(s1, False), f_of(s2, False), f_of(s3, False)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(seeds, seeds)
def test_derivation_law(s1, s2):
    f, g = f_of(s1), f_of(s2)
    for kind, index in C22.directions():
        odd = 1 if kind == "th" else 0
        sign = -1 if odd * f.parity() else 1
        lhs = sf_partial((kind, index), f * g)
        rhs = sf_partial((kind, index), f) * g + (f * sf_partial((kind, index), g)).scale(sign)
        assert lhs == rhs


@given(seeds)
def test_odd_alternation(s):
    f = f_of(s, False)
    d1 = lambda v: sf_partial(("th", 1), v)
    d2 = lambda v: sf_partial(("th", 2), v)
    assert d1(d1(f)) == 0
    assert d1(d2(f)) == -d2(d1(f))


@given(seeds)
def test_canonical_form_is_stable(s):
    f = f_of(s, False)
    again = Superfunction(C22, f.terms)
    assert again == f and hash(again) == hash(f)
    assert f - f == 0
