import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruellezeta.errors import InvalidSpectrum, ZeroEigenvalue
from ruellezeta.hurwitz import NumericValue, bernoulli, hurwitz_zeta
from ruellezeta.regdet import (
    Spectrum,
    check_theta_delta_identity,
    check_theta_delta_lattice,
    euler_factor,
    principal_log,
    regdet,
    spectral_zeta_prime_at_zero,
    zeta_factorization_order,
    zeta_from_regdets,
)

GRID_S = (0.5, 1.0, 2.0, 3.7)
GRID_ELL = (math.log(2), math.log(3), 1.0)


def test_bernoulli():
    from fractions import Fraction
    assert [bernoulli(n) for n in (0, 1, 2, 4, 6)] == [1, Fraction(-1, 2), Fraction(1, 6),
                                                       Fraction(-1, 30), Fraction(1, 42)]
    assert bernoulli(3) == 0


@settings(max_examples=60, deadline=None)
@given(st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False),
       st.floats(0.1, 6), st.floats(-3, 3), st.sampled_from([0, 1]))
def test_hurwitz_against_mpmath(z, qr, qi, d):
    if abs(z - 1) < 0.05:
        return
    q = complex(qr, qi)
    v = hurwitz_zeta(z, q, derivative=d)
    ref = complex(mpmath.zeta(z, q, d))
    assert abs(v.value - ref) <= v.error_bound + 1e-15 * abs(ref)
    assert v.error_bound < 1e-9 * max(1.0, abs(ref))


def test_hurwitz_derivative_at_zero_is_log_gamma():
    for q in (0.5, 1.0, 2.5, 1 + 0.3j, 3 - 0.7j):
        v = hurwitz_zeta(0, q, derivative=1)
        ref = complex(mpmath.loggamma(q) - 0.5 * mpmath.log(2 * mpmath.pi))
        assert abs(v.value - ref) <= v.error_bound
        assert abs(hurwitz_zeta(0, q).value - (0.5 - q)) < 1e-14


def test_hurwitz_domain():
    with pytest.raises(ValueError):
        hurwitz_zeta(0.5, -1)
    with pytest.raises(ValueError):
        hurwitz_zeta(1, 1)


def test_numeric_value_requires_finite_bound():
    with pytest.raises(ValueError):
        NumericValue(1.0, math.inf)


def test_principal_branch():
    assert principal_log(-1).imag == pytest.approx(math.pi)
    assert principal_log(complex(-1, -0.0)).imag == pytest.approx(math.pi)
    assert principal_log(1j).imag == pytest.approx(math.pi / 2)
    with pytest.raises(ZeroEigenvalue):
        principal_log(0)


def test_spectral_zeta_examples():
    assert spectral_zeta_prime_at_zero(Spectrum.finite([1])).value == 0
    assert spectral_zeta_prime_at_zero(Spectrum.finite([math.e])).value == pytest.approx(-1, abs=1e-15)
    v = spectral_zeta_prime_at_zero(Spectrum.finite([2j * math.pi, -2j * math.pi]))
    assert isinstance(v.value, float)
    assert v.value == pytest.approx(-2 * math.log(2 * math.pi), abs=1e-14)


def test_spectrum_validation():
    with pytest.raises(InvalidSpectrum):
        Spectrum.finite([1, 0])
    with pytest.raises(InvalidSpectrum):
        Spectrum.lattice(0)
    with pytest.raises(InvalidSpectrum):
        Spectrum.symmetric_pairs([1, -2])
    with pytest.raises(InvalidSpectrum):
        Spectrum.finite([1], [0])
    with pytest.raises(InvalidSpectrum):
        Spectrum("heat_kernel")


def test_regdet_examples():
    assert regdet(Spectrum.finite([2])).value == pytest.approx(2, abs=1e-14)
    assert abs(regdet(Spectrum.lattice(math.log(2)), 1).value - 0.5) < 1e-9
    assert abs(regdet(Spectrum.lattice(1.0), 2).value - (1 - math.exp(-2))) < 1e-9
    with pytest.raises(ZeroEigenvalue):
        regdet(Spectrum.finite([2, -3]), 3)
    with pytest.raises(ZeroEigenvalue):
        regdet(Spectrum.lattice(1.0), 0)
    with pytest.raises(ZeroEigenvalue):
        regdet(Spectrum.lattice(1.0), 2j * math.pi)


@pytest.mark.parametrize("ell", GRID_ELL)
@pytest.mark.parametrize("s", GRID_S)
def test_lattice_regdet_closed_form(ell, s):
    v = regdet(Spectrum.lattice(ell), s)
    assert abs(v.value - (1 - math.exp(-s * ell))) < 1e-9
    assert v.error_bound < 1e-9
    assert euler_factor(ell, s).value == v.value


def _lattice_oracle(ell, s):
    """mpmath evaluation of the same Hurwitz decomposition at 30 digits."""
    mpmath.mp.dps = 30
    try:
        c = 2 * mpmath.pi / ell
        s = mpmath.mpc(s)
        n0 = int(mpmath.floor(abs(s.imag) / c)) + 1
        total = -mpmath.log(s)
        for n in range(1, n0 + 1):
            total -= mpmath.log(s + 1j * c * n) + mpmath.log(s - 1j * c * n)
        for w, q in ((1j * c, n0 + 1 - 1j * s / c), (-1j * c, n0 + 1 + 1j * s / c)):
            total += -mpmath.log(w) * mpmath.zeta(0, q) + mpmath.zeta(0, q, 1)
        return complex(mpmath.exp(-total))
    finally:
        mpmath.mp.dps = 15


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 5), st.floats(0.1, 4), st.floats(-30, 30))
def test_lattice_regdet_complex_shift(ell, sr, si):
    s = complex(sr, si)
    if abs(cmath.exp(-s * ell) - 1) < 1e-6:
        return
    v = regdet(Spectrum.lattice(ell), s)
    closed = 1 - cmath.exp(-s * ell)
    assert abs(v.value - closed) <= max(v.error_bound, 1e-12) * 10
    assert abs(v.value - _lattice_oracle(ell, s)) <= max(v.error_bound, 1e-12) * 10


@settings(max_examples=50, deadline=None)
@given(st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=50, allow_nan=False,
                                   allow_infinity=False), min_size=1, max_size=8))
def test_finite_regdet_is_product(values):
    v = regdet(Spectrum.finite(values))
    prod = 1 + 0j
    for x in values:
        prod *= cmath.exp(principal_log(x))
    assert abs(v.value - prod) <= 1e-12 * max(1.0, abs(prod))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-20, 20).filter(lambda x: abs(x) > 0.01), min_size=1, max_size=8),
       st.randoms(use_true_random=False))
def test_finite_regdet_permutation_invariant(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    a = regdet(Spectrum.finite(values)).value
    b = regdet(Spectrum.finite(shuffled)).value
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_negative_real_eigenvalues_take_plus_pi():
    v = spectral_zeta_prime_at_zero(Spectrum.finite([-1], [1]))
    assert v.value == pytest.approx(-1j * math.pi)
    assert regdet(Spectrum.finite([-2, -3])).value == pytest.approx(6)


def test_theta_delta_examples():
    chk = check_theta_delta_identity([2 * math.pi])
    assert chk.equal
    assert chk.lhs.value == pytest.approx(-2 * math.log(2 * math.pi), abs=1e-14)
    assert chk.rhs.value == pytest.approx(0.5 * -4 * math.log(2 * math.pi), abs=1e-14)
    chk = check_theta_delta_identity([1])
    assert chk.lhs.value == 0 and chk.rhs.value == 0
    assert check_theta_delta_identity([1, 2, 3]).difference < 1e-12
    with pytest.raises(InvalidSpectrum):
        check_theta_delta_identity([])
    with pytest.raises(InvalidSpectrum):
        check_theta_delta_identity([1, 0])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=10))
def test_theta_delta_random(mu):
    assert check_theta_delta_identity(mu).difference < 1e-10


@pytest.mark.parametrize("ell", [0.3, math.log(2), 1.0, 5.0, 20.0])
def test_lattice_zero_removed(ell):
    chk = check_theta_delta_lattice(ell)
    assert chk.equal
    assert abs(chk.lhs.value + math.log(ell)) <= chk.lhs.error_bound + 1e-13


def test_zeta_factorization_order():
    assert zeta_factorization_order((1, 2, 1)) == 0
    assert zeta_factorization_order((0, 0)) == 0
    assert zeta_factorization_order((1, 1, 1, 1)) == 0
    assert zeta_factorization_order((1, 1, 0, 1)) == 1


@pytest.mark.parametrize("s", [0.7, 1.0, 2.5])
def test_zeta_from_regdets_matches_rational_form(s):
    ell = math.log(2)
    t = math.exp(-s * ell)
    # J-rotation and the cat map, eigenvalues per degree
    phi = (3 + math.sqrt(5)) / 2
    cases = (
        ([[1], [1j, -1j], [1]], (1 + t * t) / (1 - t) ** 2),
        ([[1], [phi, 1 / phi], [1]], (1 - 3 * t + t * t) / (1 - t) ** 2),
    )
    for eigs, closed in cases:
        v = zeta_from_regdets(eigs, ell, s)
        assert abs(v.value - closed) <= max(v.error_bound, 1e-12)


@pytest.mark.parametrize("z", [-4, -4 + 3j, -3.5, -2 + 4j])
def test_hurwitz_negative_real_part_stays_accurate(z):
    # direct terms grow like k^(-Re z); the bound must still be tight near q = 1
    for q in (1.0, 0.1, 2 + 1j):
        for d in (0, 1):
            v = hurwitz_zeta(z, q, derivative=d)
            ref = complex(mpmath.zeta(z, q, d))
            assert abs(v.value - ref) <= v.error_bound
            assert v.error_bound < 1e-10
