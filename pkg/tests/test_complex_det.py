import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import random_acyclic_complex, random_bases
from ruellezeta.complex_det import (
    AbelianGroup,
    BasedComplex,
    HomologySummary,
    LogMonomial,
    adapted_bases,
    basis_ratio,
    complex_determinant,
    determinant_base_change,
    dual_ratio,
    is_acyclic,
    split_complex,
    tau_base_change,
    torsion_from_homology,
)
from ruellezeta.errors import NotAcyclic, SingularBaseChange, ZeroRatio

L = LogMonomial
ell = LogMonomial.ell()


def one_step(x):
    return BasedComplex((1, 1), (((L.coerce(x),),),), ())


class TestLogMonomial:
    def test_canonical_zero(self):
        z = L(0, 5)
        assert z.ell_power == 0 and z.is_zero
        assert z == L(0)

    def test_arithmetic(self):
        a = L(Fraction(2, 3), 2)
        assert a * L(3, -1) == L(2, 1)
        assert a / a == L(1)
        assert a ** -1 == L(Fraction(3, 2), -2)
        assert abs(-a) == a and (-a).sign == -1
        assert a + a == L(Fraction(4, 3), 2)
        assert a + L(0) == a
        with pytest.raises(ValueError):
            a + L(1, 1)

    def test_evaluate_and_str(self):
        assert L(2, -2).evaluate(2.0) == pytest.approx(0.5)
        assert str(L(2, -2)) == "2*l^-2"


def test_acyclicity_examples():
    assert is_acyclic(one_step(2))
    assert not is_acyclic(one_step(0))
    with pytest.raises(NotAcyclic):
        complex_determinant(one_step(0))


def test_determinant_examples():
    assert complex_determinant(one_step(2)) == L(2)
    assert complex_determinant(one_step(ell)) == ell
    # identity on the circle: 0 -> R -(l)-> R^2 -(f_f -> l f_top)-> R -> 0
    z = L(0)
    circle = BasedComplex((1, 2, 1), (((ell,), (z,)), ((z, ell),)), ())
    assert complex_determinant(circle) == L(1)
    # J-rotation: rank-1 spaces, D0 = l, D1 = 0, D2 = l
    j = BasedComplex((1, 1, 1, 1), (((ell,),), ((z,),), ((ell,),)), ())
    assert is_acyclic(j)
    assert complex_determinant(j) == L(1, 2)


def test_differential_square_must_vanish():
    with pytest.raises(ValueError):
        BasedComplex((1, 1, 1), (((L(1),),), ((L(1),),)), ())


def test_inhomogeneous_differential_rejected():
    with pytest.raises(ValueError):
        BasedComplex((2, 1), (((ell, L(1)),),), ())


def test_empty_degrees_are_fine():
    c = BasedComplex((0, 1, 1, 0), (((),), ((ell,),), ()), ())
    assert complex_determinant(c) == ell ** -1


@pytest.mark.parametrize("mult", [(1,), (2, 1), (1, 0, 3), (2, 2, 2, 1), (0, 0, 1)])
def test_split_complex_has_determinant_one(mult):
    assert complex_determinant(split_complex(mult)) == L(1)


def test_split_complex_scaled():
    # degree i contributes ell^((-1)^(i+1) mult_(i-1)), so ell^(m_0 - m_1) here
    c = split_complex((1, 2), ell)
    assert complex_determinant(c) == ell ** (1 - 2)


def test_base_change_examples():
    c = one_step(2)
    assert determinant_base_change(c, c.bases) == L(2)
    scaled = (c.bases[0], ((L(3),),))
    assert determinant_base_change(c, scaled) == L(2, 0) / 3
    assert complex_determinant(c.with_bases(scaled)) == L(Fraction(2, 3))
    one, z = L(1), L(0)
    c2 = BasedComplex((2, 2), (((one, z), (z, one)),), ())
    rot = ((z, one), (-one, z))
    unimodular = ((one, L(3)), (z, one))
    assert determinant_base_change(c2, (rot, c2.bases[1])) == L(1)
    assert determinant_base_change(c2, (unimodular, rot)) == L(1)


def test_singular_base_change():
    c = one_step(2)
    with pytest.raises(SingularBaseChange):
        determinant_base_change(c, (c.bases[0], ((L(0),),)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_base_change_law(seed):
    rng = random.Random(seed)
    c = random_acyclic_complex(rng)
    assert is_acyclic(c)
    new = random_bases(rng, c.dims)
    assert determinant_base_change(c, new) == complex_determinant(c.with_bases(new))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_choice_independence(seed):
    rng = random.Random(seed)
    c = random_acyclic_complex(rng)
    c = c.with_bases(random_bases(rng, c.dims))
    ref = complex_determinant(c)
    assert ref.sign == 1
    for k in range(3):
        assert complex_determinant(c, random.Random(seed + k)) == ref


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adapted_bases_have_unit_determinant(seed):
    c = random_acyclic_complex(random.Random(seed))
    assert complex_determinant(c.with_bases(adapted_bases(c))) == L(1)


def test_basis_ratio():
    old = ((L(1), L(0)), (L(0), L(1)))
    new = ((ell, L(0)), (L(0), L(2, 1)))
    assert basis_ratio(new, old) == L(2, 2)
    assert basis_ratio(old, new) == L(Fraction(1, 2), -2)


def test_torsion_from_homology():
    assert torsion_from_homology(HomologySummary((AbelianGroup(1), AbelianGroup(2)))) == 1
    assert torsion_from_homology(HomologySummary((AbelianGroup(0, (5,)),))) == 5
    h = HomologySummary((AbelianGroup(1), AbelianGroup(1), AbelianGroup(1, (2,))))
    assert torsion_from_homology(h) == 2
    h = HomologySummary((AbelianGroup(1), AbelianGroup(0, (3,))))
    assert torsion_from_homology(h) == Fraction(1, 3)


def test_abelian_group_validation():
    assert str(AbelianGroup(2, (5,))) == "Z^2 + Z/5"
    assert str(AbelianGroup(0)) == "0"
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))


def test_tau_base_change_examples():
    tau = Fraction(7, 2)
    assert tau_base_change(tau, [1, 1, 1]) == tau
    assert tau_base_change(tau, [1, 2]) == tau / 2
    assert tau_base_change(tau, [3, 3]) == tau
    assert tau_base_change(tau, [Fraction(-2)]) == 2 * tau
    assert tau_base_change(L(1), [ell, L(1)]) == ell
    with pytest.raises(ZeroRatio):
        tau_base_change(tau, [1, 0])


def test_dual_ratio_examples():
    assert dual_ratio(1) == 1
    assert dual_ratio(2) == Fraction(1, 2)
    assert dual_ratio(Fraction(-3, 4)) == Fraction(-4, 3)
    assert dual_ratio(L(2, 1)) == L(Fraction(1, 2), -1)
    with pytest.raises(ZeroRatio):
        dual_ratio(0)


@settings(max_examples=50)
@given(st.lists(st.fractions().filter(lambda q: q != 0), min_size=1, max_size=6),
       st.fractions().filter(lambda q: q != 0))
def test_dual_ratios_with_flipped_parity(ratios, tau):
    # inverting every ratio and shifting degrees by one gives the same product
    direct = tau_base_change(Fraction(tau), ratios)
    flipped = tau_base_change(Fraction(tau), [1] + [dual_ratio(r) for r in ratios])
    assert direct == flipped
