"""Ruelle zeta function of a suspension flow.

With ``t = exp(-s * ell)`` the zeta function of the suspension is the
rational function

    zeta_R = prod_i det(1 - t A_i) ^ ((-1)^(i+1)),

which is taken as the definition.  The Euler product over closed orbits and
the Lefschetz exponential series are cross-checks against it.  Near ``s = 0``
each factor ``1 - t = s * ell * u(s)`` with ``u(0) = 1``, so the leading
coefficient lives in ``Q * ell^Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .complex_det import LogMonomial, is_acyclic
from .errors import DegenerateOrbits, NotAcyclic, SignInstability
from .exact_linalg import (
    IntegerMatrix,
    IntPolynomial,
    as_matrix,
    det_one_minus_tA,
    poly_exact_div,
    poly_gcd,
)
from .mapping_torus import (
    GradedEndo,
    SuspensionCohomology,
    psi_cup_complex,
    torsion_leading_value,
    suspension_cohomology,
)


@dataclass(frozen=True)
class ZetaRational:
    """``numerator(t) / denominator(t)`` with ``t = exp(-s ell)``, fully reduced."""

    numerator: IntPolynomial
    denominator: IntPolynomial

    @classmethod
    def reduced(cls, num: IntPolynomial, den: IntPolynomial) -> ZetaRational:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = poly_exact_div(num, g), poly_exact_div(den, g)
        return cls(num, den)

    def series(self, order: int) -> list[Fraction]:
        """Taylor coefficients at ``t = 0`` up to ``t^order``."""
        return series_divide(self.numerator.series(order), self.denominator.series(order), order)

    def __call__(self, t):
        return self.numerator(t) / self.denominator(t)

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


@dataclass(frozen=True)
class LeadingTerm:
    """``zeta_R(s) ~ value * s^order`` as ``s -> 0``."""

    order: int
    value: LogMonomial

    def __post_init__(self):
        if self.value.is_zero:
            raise ValueError("leading coefficient must be nonzero")


@dataclass(frozen=True)
class OrbitCensus:
    """Periodic-point data of a linear map for periods ``1..m_max``.

    Index ``m - 1`` holds period ``m``.  ``signs[m-1] = sgn det(1 - A^m)`` is the
    common index of every fixed point of ``A^m``.
    """

    m_max: int
    fixed_counts: tuple[int, ...]
    lefschetz: tuple[int, ...]
    primitive_counts: tuple[int, ...]
    signs: tuple[int, ...]


def series_divide(num: Sequence, den: Sequence, order: int) -> list[Fraction]:
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator series must have a nonzero constant term")
    out: list[Fraction] = []
    d0 = Fraction(den[0])
    for k in range(order + 1):
        acc = Fraction(num[k] if k < len(num) else 0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return out


def series_multiply(a: Sequence, b: Sequence, order: int) -> list:
    out = [0] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if x:
            for j, y in enumerate(b[:order + 1 - i]):
                out[i + j] += x * y
    return out


def zeta_det_form(e: GradedEndo) -> ZetaRational:
    num, den = IntPolynomial.one(), IntPolynomial.one()
    for i, a in enumerate(e.maps):
        f = det_one_minus_tA(a)
        if i % 2:
            num = num * f
        else:
            den = den * f
    return ZetaRational.reduced(num, den)


def lefschetz_numbers(e: GradedEndo, m_max: int) -> list[int]:
    """``L_m = sum_i (-1)^i tr(A_i^m)`` for ``m = 1..m_max``."""
    out = []
    powers = list(e.maps)
    for _ in range(m_max):
        out.append(sum((-1) ** i * p.trace() for i, p in enumerate(powers)))
        powers = [p @ a for p, a in zip(powers, e.maps)]
    return out


def exp_log_series(lefschetz: Sequence[int], order: int) -> list[Fraction]:
    """Coefficients of ``exp(sum_m L_m t^m / m)`` via ``n f_n = sum_k L_k f_(n-k)``."""
    f = [Fraction(1)]
    for n in range(1, order + 1):
        f.append(sum(Fraction(lefschetz[k - 1]) * f[n - k] for k in range(1, n + 1)) / n)
    return f


def lefschetz_series(e: GradedEndo, m_max: int) -> list[Fraction]:
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    return exp_log_series(lefschetz_numbers(e, m_max), m_max)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def orbit_census(a: IntegerMatrix, m_max: int) -> OrbitCensus:
    """Fixed points, Lefschetz numbers and primitive orbits of ``A`` on ``T^n``."""
    a = as_matrix(a)
    eye = IntegerMatrix.identity(a.rows)
    fixed, lef, signs = [], [], []
    power = eye
    for m in range(1, m_max + 1):
        power = power @ a
        d = (eye - power).det()
        if d == 0:
            raise DegenerateOrbits(m)
        fixed.append(abs(d))
        lef.append(d)
        signs.append(1 if d > 0 else -1)
    primitive = []
    for m in range(1, m_max + 1):
        total = sum(mobius(m // d) * fixed[d - 1] for d in range(1, m + 1) if m % d == 0)
        assert total % m == 0, "primitive orbit count must be integral"
        primitive.append(total // m)
    return OrbitCensus(m_max, tuple(fixed), tuple(lef), tuple(primitive), tuple(signs))


def _check_sign_stability(c: OrbitCensus, m_max: int) -> None:
    for d in range(1, m_max + 1):
        if not c.primitive_counts[d - 1]:
            continue
        for m in range(2 * d, m_max + 1, d):
            if c.signs[m - 1] != c.signs[d - 1]:
                raise SignInstability(d, m)


def euler_product_series(c: OrbitCensus, m_max: int) -> list[int]:
    """``prod_d (1 - t^d)^(-eps_d * P_d)`` truncated at ``t^m_max``."""
    if m_max > c.m_max:
        raise ValueError(f"census only covers periods up to {c.m_max}")
    _check_sign_stability(c, m_max)
    out = [1] + [0] * m_max
    for d in range(1, m_max + 1):
        count = c.primitive_counts[d - 1]
        if not count:
            continue
        expo = -c.signs[d - 1] * count
        factor = [0] * (m_max + 1)
        if expo >= 0:
            # (1 - t^d)^expo
            for k in range(0, min(expo, m_max // d) + 1):
                factor[k * d] = (-1) ** k * comb(expo, k)
        else:
            # (1 - t^d)^(-r) = sum_k C(r + k - 1, k) t^(dk)
            r = -expo
            for k in range(0, m_max // d + 1):
                factor[k * d] = comb(r + k - 1, k)
        out = series_multiply(out, factor, m_max)
    return out


def order_and_leading(z: ZetaRational) -> LeadingTerm:
    """Order of vanishing at ``s = 0`` and the exact leading coefficient."""
    if z.numerator.is_zero:
        raise ValueError("zeta function is identically zero")
    a, num = z.numerator.multiplicity_at_one()
    b, den = z.denominator.multiplicity_at_one()
    order = a - b
    return LeadingTerm(order, LogMonomial(Fraction(num(1), den(1)), order))


@dataclass(frozen=True)
class ZetaIdentityReport:
    """Both sides of the three clauses, compared exactly.

    ``b_pass`` and ``c_pass`` are ``None`` when clause a fails (skipped).
    """

    acyclic: bool
    order_lhs: int
    order_rhs: int
    leading_lhs: LogMonomial
    leading_rhs: LogMonomial | None
    sign: int
    a_pass: bool
    b_pass: bool | None
    c_pass: bool | None

    @property
    def all_pass(self) -> bool:
        return bool(self.a_pass and self.b_pass and self.c_pass)


def cohomology_order(s: SuspensionCohomology) -> int:
    """``sum_i (-1)^i i rk H^i(X, Z)``."""
    return sum((-1) ** i * i * r for i, r in enumerate(s.ranks()))


def verify_zeta_identity(e: GradedEndo, *, allow_cyclic: bool = False) -> ZetaIdentityReport:
    """Check acyclicity, the order formula and the leading-coefficient formula.

    Raises :class:`NotAcyclic` when the psi-cup complex is not acyclic unless
    ``allow_cyclic`` is set, in which case clause a is reported as failed and
    b, c as skipped.
    """
    s = suspension_cohomology(e)
    lead = order_and_leading(zeta_det_form(e))
    order_rhs = cohomology_order(s)
    acyclic = is_acyclic(psi_cup_complex(s))
    if not acyclic:
        if not allow_cyclic:
            raise NotAcyclic("the psi-cup complex is not acyclic")
        return ZetaIdentityReport(False, lead.order, order_rhs, lead.value, None,
                               lead.value.sign, False, None, None)
    rhs = torsion_leading_value(s)
    return ZetaIdentityReport(
        True, lead.order, order_rhs, lead.value, rhs, lead.value.sign,
        True, lead.order == order_rhs, abs(lead.value) == rhs,
    )

