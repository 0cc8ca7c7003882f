import pytest
from hypothesis import given, settings

from conftest import C22, MV, P, rng_of, seeds
from gradedbv.brackets import gsn_leibniz
from gradedbv.bv import GeneratingOperator
from gradedbv.calculus import d_operator, mul_operator
from gradedbv.cli.samplers import sample_multivector, sample_superfunction
from gradedbv.koszul import (
    argument_tuples,
    eq14_defect,
    eq15_defect,
    eq16_defect,
    jacobi_defect,
    koszul_arguments,
    koszul_bracket,
    partial_operator,
    phi,
    phi_vanishes,
    probe_library,
)

PROBES = {probe.name: probe for probe in probe_library(C22)}
dxx = PROBES["d_x1 d_x1"].operator
delta = GeneratingOperator().operator()


def fn(seed):
    return sample_superfunction(C22, 2, rng_of(seed), 2)


def mv(seed):
    return sample_multivector(C22, 2, 1, rng_of(seed), 2)


class TestExamples:
    def test_phi(self):
        c = mul_operator("function", P("x1 + 3"))
        assert phi(c, P("x2"), P("th1")) == 0
        assert phi(dxx, P("x1"), P("x1")) == 2
        assert phi(partial_operator("x", 2), P("x1*x2*th1")) == P("x1*th1")

    def test_koszul_bracket(self):
        assert koszul_bracket(dxx, P("x1"), P("x1")) == 2
        assert koszul_bracket(partial_operator("th", 1), P("th1*x1"), P("th2")) == 0
        A, B = MV("x1*Dx1"), MV("x1*Dx2 ^ Dth1")
        assert koszul_bracket(delta, A, B) == gsn_leibniz(A, B)

    def test_phi_needs_arguments(self):
        with pytest.raises(ValueError):
            phi(dxx)

    def test_carrier_mismatch(self):
        with pytest.raises(TypeError):
            phi(d_operator(), MV("Dx1"))

    def test_argument_tuples_respect_budget(self):
        for args in argument_tuples(C22, "function", 2, 3):
            assert len(args) == 2
        assert P("1") not in koszul_arguments(C22, "function", 2)


@pytest.mark.parametrize("name", ["mu[x1*x1+2]", "d_x1", "d_th1", "d_x1 + mu[x2]", "d_x1 d_x1",
                                  "d_th1 d_x1", "d_th2 d_th1", "d_x1 d_x2 + mu[x1*x1]"])
def test_order_iff_phi_vanishing(name):
    probe = PROBES[name]
    assert phi_vanishes(probe.operator, probe.order + 1, C22)
    if probe.order:
        assert not phi_vanishes(probe.operator, probe.order, C22)


@given(seeds, seeds, seeds)
def test_eq14_for_any_probe(s1, s2, s3):
    for name in ("d_x1 d_x1 d_x2", "d_x1 + mu[x2]", "d_th2 d_th1"):
        assert eq14_defect(PROBES[name].operator, fn(s1), fn(s2), fn(s3)) == 0


@given(seeds, seeds)
def test_eq15_for_odd_operators(s1, s2):
    for name in ("d_th1", "d_th1 d_x1"):
        assert eq15_defect(PROBES[name].operator, fn(s1), fn(s2)) == 0
    assert eq15_defect(delta, mv(s1), mv(s2)) == 0


@given(seeds, seeds, seeds)
def test_eq16_for_second_order(s1, s2, s3):
    for name in ("d_x1 d_x1", "d_th1 d_x1", "d_x1 d_x2 + mu[x1*x1]"):
        assert eq16_defect(PROBES[name].operator, fn(s1), fn(s2), fn(s3)) == 0


@settings(max_examples=20)
@given(seeds, seeds, seeds)
def test_jacobi_for_jacobi_probes(s1, s2, s3):
    assert jacobi_defect(PROBES["d_th1 d_x1"].operator, fn(s1), fn(s2), fn(s3)) == 0
    assert jacobi_defect(delta, mv(s1), mv(s2), mv(s3)) == 0


@given(seeds, seeds)
def test_delta_derived_bracket_is_gsn(s1, s2):
    A, B = mv(s1), mv(s2)
    assert koszul_bracket(delta, A, B) == gsn_leibniz(A, B)


@given(seeds, seeds)
def test_phi_is_linear(s1, s2):
    a, c = fn(s1), fn(s2)
    b = a * P("x2 - 1")  # same bidegree as a
    D = PROBES["d_x1 d_x2 + mu[x1*x1]"].operator
    assert phi(D, a + b.scale(3), c) == phi(D, a, c) + phi(D, b, c).scale(3)


@given(seeds)
def test_phi1_formula(s):
    a = fn(s)
    D = PROBES["d_x1 + mu[x2]"].operator
    assert phi(D, a) == D(a) - D(P("1")) * a
