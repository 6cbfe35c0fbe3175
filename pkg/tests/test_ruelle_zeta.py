import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import HYPERBOLIC_2X2
from ruellezeta.complex_det import LogMonomial
from ruellezeta.documents import random_semisimple_torus
from ruellezeta.errors import DegenerateOrbits, NotAcyclic, SignInstability
from ruellezeta.exact_linalg import IntegerMatrix
from ruellezeta.mapping_torus import graded_system, torus_system
from ruellezeta.ruelle_zeta import (
    OrbitCensus,
    euler_product_series,
    exp_log_series,
    lefschetz_numbers,
    lefschetz_series,
    mobius,
    orbit_census,
    order_and_leading,
    verify_zeta_identity,
    zeta_det_form,
)

L = LogMonomial
J = [[0, -1], [1, 0]]
ANOSOV = [[2, 1], [1, 1]]
CIRCLE = graded_system([[[1]], [[1]]], 2)


def taylor(expr, t, order):
    """Independent oracle: sympy series of a rational function."""
    s = sympy.series(expr, t, 0, order + 1).removeO()
    return [Fraction(str(s.coeff(t, k))) for k in range(order + 1)]


def test_det_form_examples():
    assert str(zeta_det_form(CIRCLE)) == "(1) / (1)"
    z = zeta_det_form(torus_system(J, 2))
    assert z.numerator.coeffs == (1, 0, 1) and z.denominator.coeffs == (1, -2, 1)
    z = zeta_det_form(torus_system(ANOSOV, 2))
    assert z.numerator.coeffs == (1, -3, 1) and z.denominator.coeffs == (1, -2, 1)


def test_leading_examples():
    lt = order_and_leading(zeta_det_form(CIRCLE))
    assert (lt.order, lt.value) == (0, L(1))
    lt = order_and_leading(zeta_det_form(torus_system(J, 2)))
    assert (lt.order, lt.value) == (-2, L(2, -2))
    lt = order_and_leading(zeta_det_form(torus_system(ANOSOV, 2)))
    assert (lt.order, lt.value) == (-2, L(-1, -2))


def test_lefschetz_series_examples():
    t = sympy.symbols("t")
    assert lefschetz_series(CIRCLE, 5) == [1, 0, 0, 0, 0, 0]
    anosov = lefschetz_series(torus_system(ANOSOV, 2), 10)
    assert anosov[:6] == [1, -1, -2, -3, -4, -5]
    assert anosov == taylor((1 - 3 * t + t**2) / (1 - t) ** 2, t, 10)
    assert lefschetz_series(torus_system(J, 2), 10) == taylor((1 + t**2) / (1 - t) ** 2, t, 10)
    with pytest.raises(ValueError):
        lefschetz_series(CIRCLE, 0)


def test_exp_log_series_against_sympy():
    t = sympy.symbols("t")
    lef = [3, -1, 4, 1, -5]
    expr = sympy.exp(sum(sympy.Rational(c, m + 1) * t ** (m + 1) for m, c in enumerate(lef)))
    assert exp_log_series(lef, 5) == taylor(expr, t, 5)


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_orbit_census_examples():
    c = orbit_census(IntegerMatrix.from_rows(ANOSOV), 3)
    assert c.fixed_counts == (1, 5, 16)
    assert c.primitive_counts == (1, 2, 5)
    assert c.signs == (-1, -1, -1)
    c = orbit_census(IntegerMatrix.from_rows([[2]]), 1)
    assert c.fixed_counts == (1,)
    with pytest.raises(DegenerateOrbits) as info:
        orbit_census(IntegerMatrix.from_rows(J), 8)
    assert info.value.period == 4


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(HYPERBOLIC_2X2), st.integers(1, 12))
def test_mobius_relation(a, m_max):
    c = orbit_census(IntegerMatrix.from_rows(a), m_max)
    for m in range(1, m_max + 1):
        total = sum(d * c.primitive_counts[d - 1] for d in range(1, m + 1) if m % d == 0)
        assert total == c.fixed_counts[m - 1]


def test_euler_product_examples():
    assert euler_product_series(OrbitCensus(3, (0, 0, 0), (0, 0, 0), (0, 0, 0), (1, 1, 1)), 3) == [1, 0, 0, 0]
    single = OrbitCensus(1, (1,), (-1,), (1,), (-1,))
    assert euler_product_series(single, 1) == [1, -1]
    e = torus_system(ANOSOV, 2)
    c = orbit_census(e.torus_matrix, 10)
    assert euler_product_series(c, 10) == lefschetz_series(e, 10)


def test_sign_instability():
    # -A for the cat map: det(1 - A^m) alternates in sign
    c = orbit_census(IntegerMatrix.from_rows([[-2, -1], [-1, -1]]), 4)
    with pytest.raises(SignInstability):
        euler_product_series(c, 4)


@pytest.mark.parametrize("a", HYPERBOLIC_2X2)
def test_euler_matches_det_form(a):
    e = torus_system(a, 2)
    c = orbit_census(e.torus_matrix, 20)
    assert euler_product_series(c, 20) == zeta_det_form(e).series(20)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_lefschetz_matches_det_form(n, seed):
    e = torus_system(random_semisimple_torus(random.Random(seed), n), 2)
    assert lefschetz_series(e, 15) == zeta_det_form(e).series(15)
    # functional symmetry: the degree difference is the Euler characteristic of M
    z = zeta_det_form(e)
    assert z.numerator.degree - z.denominator.degree == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_lefschetz_numbers_are_fixed_point_indices(n, seed):
    a = random_semisimple_torus(random.Random(seed), n)
    e = torus_system(a, 2)
    lef = lefschetz_numbers(e, 6)
    for m, value in enumerate(lef, start=1):
        assert value == (IntegerMatrix.identity(n) - a ** m).det()


def test_verify_examples():
    for e, order, lead, sign in (
        (CIRCLE, 0, L(1), 1),
        (torus_system(J, 2), -2, L(2, -2), 1),
        (torus_system(ANOSOV, 2), -2, L(1, -2), -1),
    ):
        r = verify_zeta_identity(e)
        assert r.all_pass
        assert (r.order_lhs, r.order_rhs, r.leading_rhs, r.sign) == (order, order, lead, sign)


def test_verify_unipotent():
    e = torus_system([[1, 1], [0, 1]], 2)
    with pytest.raises(NotAcyclic):
        verify_zeta_identity(e)
    r = verify_zeta_identity(e, allow_cyclic=True)
    assert not r.a_pass and r.b_pass is None and r.c_pass is None
    assert (r.order_lhs, r.order_rhs) == (0, -1)
