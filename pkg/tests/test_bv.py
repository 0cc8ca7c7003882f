import pytest
from hypothesis import given, settings

from conftest import C22, MV, P, rng_of, seeds
from gradedbv.brackets import gsn_leibniz
from gradedbv.bv import (
    Divergence,
    GeneratingOperator,
    delta_commutes_with_insertion,
    delta_extend,
    delta_oracle,
    divergence_apply,
    generating_defect,
)
from gradedbv.calculus import DegreeError, apply_vector, as_multivector
from gradedbv.cli.samplers import sample_even_function, sample_multivector, sample_superfunction

gen0 = GeneratingOperator()


def mv(seed, max_p=4):
    return sample_multivector(C22, max_p, 2, rng_of(seed), 3)


def twisted(seed):
    return GeneratingOperator(Divergence(sample_even_function(C22, 2, rng_of(seed))))


class TestExamples:
    def test_divergence(self):
        dv = Divergence()
        assert divergence_apply(dv, MV("Dx1")) == 0
        assert divergence_apply(dv, MV("x1*Dx1")) == 1
        assert divergence_apply(dv, MV("th1*Dth1")) == -1

    def test_twisted_divergence(self):
        dv = Divergence(P("x1*x1"))
        assert divergence_apply(dv, MV("Dx1")) == P("2*x1")
        assert divergence_apply(dv, MV("x1*Dx1")) == P("1 + 2*x1*x1")

    def test_divergence_errors(self):
        with pytest.raises(DegreeError):
            divergence_apply(Divergence(), MV("Dx1 ^ Dx2"))
        with pytest.raises(ValueError):
            Divergence(P("th1"))

    def test_delta_extend(self):
        assert delta_extend(gen0, P("x1*x1*th1")) == 0
        assert delta_extend(gen0, MV("x1*Dx1")) == -1
        assert delta_extend(gen0, MV("x1*Dx1 ^ Dx2")) == MV("-Dx2")

    def test_delta_oracle(self):
        assert delta_oracle(gen0, MV("Dx1 ^ Dx2")) == 0
        assert delta_oracle(gen0, MV("x1*Dx1 ^ Dx2")) == MV("-Dx2")
        assert delta_oracle(gen0, P("x2*th2")) == 0

    def test_generating_defect(self):
        assert generating_defect(gen0, MV("x1*Dx2"), MV("x2*Dx1")) == 0
        assert generating_defect(gen0, P("x1"), P("th1")) == 0
        gen = GeneratingOperator(Divergence(P("x1*x1")))
        assert generating_defect(gen, MV("Dx1"), MV("x1*Dx2")) == 0

    def test_insertion(self):
        assert delta_commutes_with_insertion(gen0, P("x1*x1"), MV("Dx1 ^ Dx2")) == 0
        assert delta_commutes_with_insertion(gen0, P("5"), MV("x1*Dx1 ^ Dth2")) == 0
        assert delta_commutes_with_insertion(gen0, P("th1"), MV("Dth1 ^ Dth1")) == 0

    def test_operator_handle(self):
        op = gen0.operator()
        assert op.bidegree == gen0.bidegree == (-1, 0)
        assert op(MV("x1*Dx1 ^ Dx2")) == MV("-Dx2")


@given(seeds, seeds, seeds)
def test_divergence_axiom(s1, s2, s3):
    a = sample_superfunction(C22, 2, rng_of(s1))
    D = sample_multivector(C22, 1, 2, rng_of(s2), 3, bidegree=(1, rng_of(s2).randint(-1, 1)))
    dv = Divergence(sample_even_function(C22, 2, rng_of(s3)))
    sign = -1 if a.parity() * D.bidegree()[1] % 2 else 1
    lhs = divergence_apply(dv, a * D)
    rhs = a * divergence_apply(dv, D) + apply_vector(D, a).function_part().scale(sign)
    assert lhs == rhs


@given(seeds, seeds)
def test_extend_equals_oracle(s1, s2):
    C = mv(s1)
    gen = twisted(s2)
    value = delta_extend(gen, C)
    assert value == delta_oracle(gen, C) == delta_oracle(gen, C, split="last")
    # twists of nonzero ghost degree break homogeneity, so check the contract untwisted
    value = delta_extend(gen0, C)
    if value:
        p, k = C.bidegree()
        assert value.bidegree() == (p - 1, k)


@given(seeds)
def test_low_degrees(s):
    f = sample_superfunction(C22, 2, rng_of(s))
    X = sample_multivector(C22, 1, 2, rng_of(s), 3, bidegree=(1, 0))
    assert delta_extend(gen0, f) == 0
    assert delta_extend(gen0, X) == as_multivector(-divergence_apply(Divergence(), X))


@settings(max_examples=40)
@given(seeds, seeds, seeds)
def test_generating_theorem(s1, s2, s3):
    A, B = mv(s1, 2), mv(s2, 2)
    assert generating_defect(twisted(s3), A, B) == 0


@settings(max_examples=40)
@given(seeds, seeds, seeds)
def test_commutes_with_insertion_of_any_function(s1, s2, s3):
    a = sample_superfunction(C22, 2, rng_of(s1))
    C = mv(s2)
    assert delta_commutes_with_insertion(twisted(s3), a, C) == 0


@given(seeds, seeds)
def test_bracket_from_delta_on_vector_fields(s1, s2):
    X = sample_multivector(C22, 1, 2, rng_of(s1), 3, bidegree=(1, 0))
    Y = sample_multivector(C22, 1, 2, rng_of(s2), 3, bidegree=(1, 1))
    gen = GeneratingOperator()
    expected = -(gen(X * Y) - gen(X) * Y + X * gen(Y))
    assert gsn_leibniz(X, Y) == expected
