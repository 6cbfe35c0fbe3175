"""Suspension (mapping torus) of a graded integral endomorphism.

A diffeomorphism ``phi`` of a closed manifold ``M`` with torsion-free
cohomology is described by the matrices ``A_i`` of ``phi^*`` on
``H^i(M, Z)``.  The suspension ``X`` fibres over a circle of length ``ell``
and the Wang sequence splits as

    H^i(X, Z) = coker(A_(i-1) - 1)  (+)  ker(A_i - 1).

The distinguished integral basis ``f^i`` of ``H^i(X, Z)/tors`` lists the
cokernel part first (lifted through the Smith transform) and then the
saturated kernel basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from math import gcd, log
from typing import Sequence

from .complex_det import (
    AbelianGroup,
    BasedComplex,
    HomologySummary,
    LogMonomial,
    complex_determinant,
    is_acyclic,
)
from .errors import NotAcyclic, NotUnimodular, ValidationError
from .exact_linalg import (
    Cokernel,
    IntegerMatrix,
    as_matrix,
    cokernel,
    exterior_power,
    kernel_basis,
)


@dataclass(frozen=True)
class Period:
    """The period ``ell`` of the base circle: ``log p`` or an explicit length."""

    log_of: int | None = None
    length: Decimal | None = None

    def __post_init__(self):
        if (self.log_of is None) == (self.length is None):
            raise ValidationError("exactly one of p / length must be given")
        if self.log_of is not None:
            if isinstance(self.log_of, bool) or not isinstance(self.log_of, int) or self.log_of < 2:
                raise ValidationError(f"p must be an integer >= 2, got {self.log_of!r}")
        else:
            try:
                length = Decimal(str(self.length))
            except InvalidOperation as exc:
                raise ValidationError(f"bad length {self.length!r}") from exc
            if not length.is_finite() or length <= 0:
                raise ValidationError(f"length must be positive, got {self.length!r}")
            object.__setattr__(self, "length", length)

    @property
    def value(self) -> float:
        return log(self.log_of) if self.log_of is not None else float(self.length)

    def to_json(self) -> dict:
        if self.log_of is not None:
            return {"log_of": self.log_of}
        return {"value": str(self.length)}

    def __str__(self) -> str:
        return f"log {self.log_of}" if self.log_of is not None else str(self.length)


def _period(p=None, length=None) -> Period:
    if isinstance(p, Period):
        return p
    return Period(log_of=p, length=length)


@dataclass(frozen=True)
class GradedEndo:
    """Matrices ``A_0..A_n`` of ``phi^*`` on ``H^0(M)..H^n(M)`` and the period.

    ``A_0`` must be ``[1]`` (connected fibre).  In torus mode ``torus_matrix``
    holds ``A`` with ``A_i = Lambda^i A``.
    """

    maps: tuple[IntegerMatrix, ...]
    ell: Period
    torus_matrix: IntegerMatrix | None = None

    def __post_init__(self):
        maps = tuple(as_matrix(a) for a in self.maps)
        object.__setattr__(self, "maps", maps)
        if not maps:
            raise ValidationError("at least H^0 is required")
        for i, a in enumerate(maps):
            if not a.is_square:
                raise ValidationError(f"A_{i} must be square, got {a.rows}x{a.cols}")
            if a.rows and abs(a.det()) != 1:
                raise ValidationError(f"A_{i} is not invertible over Z (det {a.det()})")
        if maps[0] != IntegerMatrix.identity(1):
            raise ValidationError("A_0 must be [[1]]: the fibre must be connected")
        if self.torus_matrix is not None:
            a = as_matrix(self.torus_matrix)
            object.__setattr__(self, "torus_matrix", a)
            if len(maps) != a.rows + 1 or any(
                maps[i] != exterior_power(a, i) for i in range(len(maps))
            ):
                raise ValidationError("torus mode requires A_i = Lambda^i A")

    @property
    def mode(self) -> str:
        return "torus" if self.torus_matrix is not None else "graded"

    @property
    def fibre_dim(self) -> int:
        return len(self.maps) - 1

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(a.rows for a in self.maps)


def torus_system(a, p: int | None = None, length=None) -> GradedEndo:
    """Linear automorphism ``A`` of ``T^n`` with ``A_i = Lambda^i A``."""
    a = as_matrix(a)
    if not a.is_square:
        raise ValidationError("torus matrix must be square")
    if abs(a.det()) != 1:
        raise NotUnimodular(f"|det A| = {abs(a.det())}, expected 1")
    maps = tuple(exterior_power(a, i) for i in range(a.rows + 1))
    return GradedEndo(maps, _period(p, length), a)


def graded_system(maps: Sequence, p: int | None = None, length=None) -> GradedEndo:
    return GradedEndo(tuple(as_matrix(m) for m in maps), _period(p, length))


@dataclass(frozen=True)
class CohomologySummary:
    """``H^i(X, Z)`` with the integral basis ``(coker lift, kernel)``.

    ``coker`` is the cokernel of ``A_(i-1) - 1`` (``None`` in degree 0) and
    ``kernel`` a saturated basis of ``ker(A_i - 1)`` (empty in degree n+1).
    """

    degree: int
    coker: Cokernel | None
    kernel: tuple[tuple[int, ...], ...]

    @property
    def coker_rank(self) -> int:
        return self.coker.free_rank if self.coker is not None else 0

    @property
    def rank(self) -> int:
        return self.coker_rank + len(self.kernel)

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.coker.torsion if self.coker is not None else ()

    @property
    def group(self) -> AbelianGroup:
        return AbelianGroup(self.rank, self.torsion)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"coker{j}" for j in range(self.coker_rank)) + tuple(
            f"ker{j}" for j in range(len(self.kernel))
        )


@dataclass(frozen=True)
class SuspensionCohomology:
    system: GradedEndo
    degrees: tuple[CohomologySummary, ...]
    psi: tuple[LogMonomial, ...]

    def summary(self) -> HomologySummary:
        return HomologySummary(tuple(d.group for d in self.degrees))

    def ranks(self) -> tuple[int, ...]:
        return tuple(d.rank for d in self.degrees)

    @property
    def ell(self) -> Period:
        return self.system.ell

    def torsion_product(self) -> Fraction:
        """``prod_i |H^i(X, Z)_tors|^((-1)^i)``."""
        out = Fraction(1)
        for d in self.degrees:
            order = d.coker.torsion_order if d.coker is not None else 1
            out *= Fraction(order) ** (1 if d.degree % 2 == 0 else -1)
        return out


def suspension_cohomology(e: GradedEndo) -> SuspensionCohomology:
    n = e.fibre_dim
    degrees = []
    for i in range(n + 2):
        coker = cokernel(e.maps[i - 1].minus_identity()) if i > 0 else None
        kern = tuple(kernel_basis(e.maps[i].minus_identity())) if i <= n else ()
        degrees.append(CohomologySummary(i, coker, kern))
    # psi = ell * delta(1), the image of the unit class of H^0(M)
    first = degrees[1]
    coords = first.coker.project((1,)) + (0,) * len(first.kernel)
    psi = tuple(LogMonomial(c, 1) for c in coords)
    return SuspensionCohomology(e, tuple(degrees), psi)


def suspension_homology(e: GradedEndo) -> HomologySummary:
    """``H_i(X, Z) = coker(A_i^T - 1) (+) ker(A_(i-1)^T - 1)``.

    ``phi_*`` on homology is the transpose of ``phi^*`` in dual bases.
    """
    n = e.fibre_dim
    groups = []
    for i in range(n + 2):
        if i <= n:
            ck = cokernel(e.maps[i].transpose().minus_identity())
            rank, tors = ck.free_rank, ck.torsion
        else:
            rank, tors = 0, ()
        if i > 0:
            rank += len(kernel_basis(e.maps[i - 1].transpose().minus_identity()))
        groups.append(AbelianGroup(rank, tors))
    return HomologySummary(tuple(groups))


def psi_cup_complex(s: SuspensionCohomology) -> BasedComplex:
    """The complex ``(H^.(X, R), h -> psi u h)`` in the integral bases ``f^.``.

    A kernel class ``k`` of degree ``i`` maps to ``ell`` times its image in
    the free part of ``coker(A_i - 1)``; cokernel classes map to zero.
    """
    dims = tuple(d.rank for d in s.degrees)
    ell = LogMonomial.ell()
    zero = LogMonomial(0)
    diffs = []
    for i in range(len(dims) - 1):
        src, dst = s.degrees[i], s.degrees[i + 1]
        cols = [[zero] * dims[i + 1] for _ in range(src.coker_rank)]
        for k in src.kernel:
            image = dst.coker.project(k)
            cols.append([ell * x if x else zero for x in image] + [zero] * len(dst.kernel))
        diffs.append(tuple(tuple(cols[j][r] for j in range(dims[i])) for r in range(dims[i + 1])))
    labels = tuple(d.labels for d in s.degrees)
    return BasedComplex(dims, tuple(diffs), (), labels)


def check_semisimple_at_one(e: GradedEndo) -> bool:
    """``rank(A_i - 1) == rank((A_i - 1)^2)`` in every degree."""
    for a in e.maps:
        b = a.minus_identity()
        if b.rank() != (b @ b).rank():
            return False
    return True


def torsion_leading_value(s: SuspensionCohomology) -> LogMonomial:
    """``prod_i |H^i(X, Z)_tors|^((-1)^i) / det(H^., psi u -, f^.)``."""
    c = psi_cup_complex(s)
    if not is_acyclic(c):
        raise NotAcyclic("the psi-cup complex is not acyclic")
    return LogMonomial(s.torsion_product()) / complex_determinant(c)


def period_group(s: SuspensionCohomology) -> tuple[int, LogMonomial]:
    """Rank and generator of ``psi(H_1(X, Z)) in R``.

    ``psi`` is evaluated on the basis of ``H_1/tors`` dual to ``f^1``, so the
    image is generated by ``ell`` times the gcd of its coordinates.
    """
    g = 0
    for x in s.psi:
        g = gcd(g, int(x.coeff))
    if g == 0:
        return 0, LogMonomial(0)
    return 1, LogMonomial(g, 1)
