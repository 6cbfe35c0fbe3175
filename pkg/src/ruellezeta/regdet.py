"""Zeta-regularized determinants of explicitly given spectra.

``zeta_T(z) = sum_{lambda != 0} lambda^(-z)`` with ``arg lambda in (-pi, pi]``
and ``det_inf(T) = exp(-zeta_T'(0))``.  Three kinds of spectra are
supported: finite lists, the lattice ``{2 pi i n / ell}`` and the symmetric
family ``{+- i mu_k}``.  A negative real eigenvalue takes ``arg = +pi``; this
is the fixed convention, not an error.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidSpectrum, ZeroEigenvalue
from .hurwitz import EPS, NumericValue, hurwitz_zeta

FINITE, LATTICE, PAIRS = "finite", "lattice", "symmetric_pairs"


def principal_log(x: complex) -> complex:
    """``log |x| + i arg x`` with ``arg x in (-pi, pi]``."""
    x = complex(x)
    if x == 0:
        raise ZeroEigenvalue("log of zero")
    if x.imag == 0 and x.real < 0:
        # cmath would return -i pi for a signed zero imaginary part
        return complex(math.log(-x.real), math.pi)
    return cmath.log(x)


@dataclass(frozen=True)
class Spectrum:
    """An eigenvalue multiset given by one of three explicit descriptions."""

    kind: str
    values: tuple[complex, ...] = ()
    multiplicities: tuple[int, ...] = ()
    ell: float | None = None

    def __post_init__(self):
        if self.kind == FINITE:
            if len(self.values) != len(self.multiplicities):
                raise InvalidSpectrum("one multiplicity per value is required")
            if any(complex(v) == 0 for v in self.values):
                raise InvalidSpectrum("finite spectra exclude 0")
            if any(not isinstance(m, int) or m < 1 for m in self.multiplicities):
                raise InvalidSpectrum("multiplicities must be positive integers")
        elif self.kind == LATTICE:
            if self.ell is None or not math.isfinite(self.ell) or self.ell <= 0:
                raise InvalidSpectrum(f"lattice needs ell > 0, got {self.ell!r}")
        elif self.kind == PAIRS:
            if not self.values:
                raise InvalidSpectrum("symmetric pair family needs at least one mu")
            if any(not (isinstance(m, (int, float)) and math.isfinite(m) and m > 0)
                   for m in self.values):
                raise InvalidSpectrum("every mu must be a positive real")
        else:
            raise InvalidSpectrum(f"unknown spectrum kind {self.kind!r}")

    @classmethod
    def finite(cls, values: Iterable[complex], multiplicities: Iterable[int] | None = None):
        values = tuple(complex(v) for v in values)
        mult = tuple(multiplicities) if multiplicities is not None else (1,) * len(values)
        return cls(FINITE, values, mult)

    @classmethod
    def lattice(cls, ell: float):
        return cls(LATTICE, ell=float(ell))

    @classmethod
    def symmetric_pairs(cls, mu: Iterable[float]):
        return cls(PAIRS, tuple(mu))

    def points(self) -> list[tuple[complex, int]]:
        """Eigenvalues with multiplicity; finite kinds only."""
        if self.kind == FINITE:
            return list(zip(self.values, self.multiplicities))
        if self.kind == PAIRS:
            out = []
            for m in self.values:
                out += [(complex(0, m), 1), (complex(0, -m), 1)]
            return out
        raise InvalidSpectrum("a lattice has infinitely many points")


def _finite_zeta_prime(points: Sequence[tuple[complex, int]], shift: complex,
                       skip_zero: bool) -> NumericValue:
    acc, mag = 0j, 0.0
    for lam, mult in points:
        x = lam + shift
        if x == 0:
            if skip_zero:
                continue
            raise ZeroEigenvalue(f"shift {shift} lands on the eigenvalue {lam}")
        lg = principal_log(x)
        acc -= mult * lg
        mag += mult * abs(lg)
    return NumericValue(acc, 4 * EPS * (mag + 1))


def _lattice_zeta_prime(ell: float, shift: complex, skip_zero: bool) -> NumericValue:
    """Points ``shift + i c n`` with ``c = 2 pi / ell``, all ``n in Z``.

    ``|n| <= n0`` is summed directly in ascending ``|n|``.  For ``n > n0`` the
    points are ``(i c) (n + q)`` with ``q = -i shift / c`` and for ``n < -n0``
    they are ``(-i c) (m + q')`` with ``q' = i shift / c``.  Each tail is
    ``w^(-z) zeta(z, n0 + 1 + q)`` whose ``z``-derivative at 0 is
    ``-Log(w) zeta(0, .) + zeta'(0, .)``; the arguments add without leaving
    ``(-pi, pi]`` because ``Re(n0 + 1 + q) > 0``.
    """
    shift = complex(shift)
    c = 2 * math.pi / ell
    n0 = math.floor(abs(shift.imag) / c) + 1
    acc, err = 0j, 0.0
    for n in range(n0 + 1):
        for x in ((shift,) if n == 0 else (shift + 1j * c * n, shift - 1j * c * n)):
            if x == 0:
                if skip_zero:
                    continue
                raise ZeroEigenvalue(f"shift {shift} lands on a lattice point")
            lg = principal_log(x)
            acc -= lg
            err += 4 * EPS * abs(lg)
    for w, q in ((1j * c, n0 + 1 - 1j * shift / c), (-1j * c, n0 + 1 + 1j * shift / c)):
        val = hurwitz_zeta(0, q)
        der = hurwitz_zeta(0, q, derivative=1)
        lw = principal_log(w)
        acc += -lw * val.value + der.value
        err += abs(lw) * val.error_bound + der.error_bound
    return NumericValue(acc, err)


def _zeta_prime(spec: Spectrum, shift: complex, skip_zero: bool) -> NumericValue:
    if spec.kind == LATTICE:
        return _lattice_zeta_prime(spec.ell, shift, skip_zero)
    return _finite_zeta_prime(spec.points(), complex(shift), skip_zero)


def _realify(v: NumericValue) -> NumericValue:
    z = complex(v.value)
    if abs(z.imag) <= v.error_bound:
        return NumericValue(z.real, v.error_bound + abs(z.imag))
    return v


def spectral_zeta_prime_at_zero(spec: Spectrum, shift: complex = 0) -> NumericValue:
    """``zeta'_(T + shift)(0)``; eigenvalues equal to zero are skipped."""
    return _realify(_zeta_prime(spec, shift, skip_zero=True))


def regdet(spec: Spectrum, shift: complex = 0) -> NumericValue:
    """``det_inf(T + shift) = exp(-zeta'_(T + shift)(0))``.

    For the lattice, which is symmetric under negation, this is also
    ``det_inf(shift - T)``.
    """
    d = _zeta_prime(spec, shift, skip_zero=False)
    val = cmath.exp(-d.value)
    bound = abs(val) * math.expm1(d.error_bound) + 4 * EPS * abs(val)
    return _realify(NumericValue(val, bound))


def euler_factor(length: float, s: complex) -> NumericValue:
    """``1 - exp(-s length)`` as the regularized determinant of ``s - theta``
    on a closed orbit of that length."""
    return regdet(Spectrum.lattice(length), s)


def zeta_from_regdets(eigenvalues: Sequence[Sequence[complex]], ell: float,
                      s: complex) -> NumericValue:
    """``prod_i det_inf(s - theta_i)^((-1)^(i+1))`` for a suspension.

    ``eigenvalues[i]`` lists the eigenvalues ``mu`` of ``A_i``; each one
    contributes the lattice ``(log mu + 2 pi i Z) / ell`` to ``theta_i``, whose
    determinant at ``s`` is ``1 - mu exp(-s ell)``.
    """
    val, rel = 1 + 0j, 0.0
    lattice = Spectrum.lattice(ell)
    for i, eigs in enumerate(eigenvalues):
        for mu in eigs:
            d = regdet(lattice, complex(s) - principal_log(mu) / ell)
            z = complex(d.value)
            if z == 0:
                raise ZeroEigenvalue("zeta has a zero or pole at this s")
            val = val * z if i % 2 else val / z
            rel += d.error_bound / abs(z)
    return _realify(NumericValue(val, abs(val) * math.expm1(rel * 1.01)))


@dataclass(frozen=True)
class IdentityCheck:
    lhs: NumericValue
    rhs: NumericValue
    tolerance: float

    @property
    def difference(self) -> float:
        return abs(complex(self.lhs.value) - complex(self.rhs.value))

    @property
    def equal(self) -> bool:
        return self.difference <= self.tolerance


def check_theta_delta_identity(mu: Sequence[float], tolerance: float = 1e-10) -> IdentityCheck:
    """``zeta'_(-theta)(0)`` against ``zeta'_(Delta_0)(0) / 2``.

    ``theta`` has spectrum ``{+- i mu_k}`` (symmetric, so ``-theta`` has the
    same one) and ``Delta_0 = -theta^2`` has ``{mu_k^2}`` twice each.
    """
    mu = tuple(mu)
    if not mu:
        raise InvalidSpectrum("mu must be nonempty")
    theta = Spectrum.symmetric_pairs(mu)
    delta = Spectrum.finite([m * m for m in mu], [2] * len(mu))
    lhs = spectral_zeta_prime_at_zero(theta)
    d = spectral_zeta_prime_at_zero(delta)
    rhs = NumericValue(d.value / 2, d.error_bound / 2)
    return IdentityCheck(lhs, rhs, tolerance)


def check_theta_delta_lattice(ell: float, tolerance: float = 1e-10) -> IdentityCheck:
    """The same identity on the lattice ``theta = {2 pi i n / ell}``, zero removed.

    ``Delta_0`` has eigenvalues ``(c n)^2``, ``n != 0``, so
    ``zeta_Delta(z) = 2 c^(-2z) zeta(2z)`` and
    ``zeta_Delta'(0) / 2 = -2 log c zeta(0) + 2 zeta'(0)``.
    """
    lhs = spectral_zeta_prime_at_zero(Spectrum.lattice(ell))
    c = 2 * math.pi / ell
    z0 = hurwitz_zeta(0, 1)
    z1 = hurwitz_zeta(0, 1, derivative=1)
    val = -2 * math.log(c) * z0.value + 2 * z1.value
    err = 2 * abs(math.log(c)) * z0.error_bound + 2 * z1.error_bound
    return IdentityCheck(lhs, _realify(NumericValue(val, err)), tolerance)


def zeta_factorization_order(zero_mode_dims: Sequence[int]) -> int:
    """``sum_i (-1)^(i+1) dim_i``: the power of ``s`` carried by zero modes."""
    return sum((-1) ** (i + 1) * d for i, d in enumerate(zero_mode_dims))
