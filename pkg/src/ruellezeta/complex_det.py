"""Determinants of acyclic based cochain complexes and torsion bookkeeping.

Scalars are :class:`LogMonomial` values ``c * ell^k`` with ``c`` rational and
``ell > 0`` a formal period (``log p`` or a flow length).  Every differential
of a :class:`BasedComplex` must be homogeneous in ``ell`` (all nonzero
entries carry one exponent), and every basis vector must be homogeneous too.
This keeps all computations inside ``Q * ell^Z`` and lets Gaussian elimination
run on the rational parts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Sequence

from .errors import NotAcyclic, SingularBaseChange, ZeroRatio
from .exact_linalg import base_change_det, rational_det, rational_rank, row_echelon


@dataclass(frozen=True, eq=False)
class LogMonomial:
    """The value ``coeff * ell ** ell_power``.

    Multiplication adds exponents.  Addition is only defined between equal
    exponents; zero (canonically ``0 * ell^0``) is the additive identity for
    every exponent.
    """

    coeff: Fraction
    ell_power: int = 0

    def __post_init__(self):
        if isinstance(self.coeff, float):
            raise TypeError("LogMonomial coefficients must be exact")
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "ell_power", int(self.ell_power))
        if self.coeff == 0:
            object.__setattr__(self, "ell_power", 0)

    @classmethod
    def coerce(cls, x) -> LogMonomial:
        if isinstance(x, LogMonomial):
            return x
        if isinstance(x, (int, Fraction, _RationalABC)) and not isinstance(x, bool):
            return cls(Fraction(x), 0)
        raise TypeError(f"cannot interpret {x!r} as a LogMonomial")

    @classmethod
    def ell(cls, power: int = 1) -> LogMonomial:
        return cls(Fraction(1), power)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def __mul__(self, other) -> LogMonomial:
        try:
            o = LogMonomial.coerce(other)
        except TypeError:
            return NotImplemented
        return LogMonomial(self.coeff * o.coeff, self.ell_power + o.ell_power)

    __rmul__ = __mul__

    def __truediv__(self, other) -> LogMonomial:
        try:
            o = LogMonomial.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by a zero LogMonomial")
        return LogMonomial(self.coeff / o.coeff, self.ell_power - o.ell_power)

    def __rtruediv__(self, other) -> LogMonomial:
        return LogMonomial.coerce(other) / self

    def __pow__(self, k: int) -> LogMonomial:
        if k < 0 and self.is_zero:
            raise ZeroDivisionError("negative power of zero")
        return LogMonomial(self.coeff ** k, self.ell_power * k)

    def __neg__(self) -> LogMonomial:
        return LogMonomial(-self.coeff, self.ell_power)

    def __abs__(self) -> LogMonomial:
        return LogMonomial(abs(self.coeff), self.ell_power)

    def __add__(self, other) -> LogMonomial:
        try:
            o = LogMonomial.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        if self.ell_power != o.ell_power:
            raise ValueError(
                f"cannot add ell^{self.ell_power} and ell^{o.ell_power} terms"
            )
        return LogMonomial(self.coeff + o.coeff, self.ell_power)

    __radd__ = __add__

    def __sub__(self, other) -> LogMonomial:
        return self + (-LogMonomial.coerce(other))

    def __rsub__(self, other) -> LogMonomial:
        return LogMonomial.coerce(other) - self

    def __eq__(self, other) -> bool:
        try:
            o = LogMonomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeff == o.coeff and self.ell_power == o.ell_power

    def __hash__(self) -> int:
        return hash((self.coeff, self.ell_power))

    def evaluate(self, ell: float) -> float:
        return float(self.coeff) * float(ell) ** self.ell_power

    def __str__(self) -> str:
        if self.ell_power == 0 or self.is_zero:
            return str(self.coeff)
        return f"{self.coeff}*l^{self.ell_power}"

    def __repr__(self) -> str:
        return f"LogMonomial({self.coeff!s}, {self.ell_power})"


def _homogeneous(entries: Sequence[LogMonomial], what: str) -> tuple[list[Fraction], int]:
    """Split homogeneous LogMonomial entries into rational parts and one exponent."""
    powers = {e.ell_power for e in entries if not e.is_zero}
    if len(powers) > 1:
        raise ValueError(f"{what} is not homogeneous in ell (exponents {sorted(powers)})")
    return [e.coeff for e in entries], (powers.pop() if powers else 0)


@dataclass(frozen=True)
class BasedComplex:
    """Finite cochain complex ``0 -> V^0 -> ... -> V^r -> 0`` with bases.

    ``differentials[i]`` is the ``dims[i+1] x dims[i]`` matrix of ``D: V^i ->
    V^(i+1)`` acting on coordinate columns.  ``bases[i]`` lists the vectors of
    the chosen basis of ``V^i`` in coordinates.
    """

    dims: tuple[int, ...]
    differentials: tuple[tuple[tuple[LogMonomial, ...], ...], ...]
    bases: tuple[tuple[tuple[LogMonomial, ...], ...], ...]
    labels: tuple[tuple[str, ...], ...] | None = None
    _cores: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if any(d < 0 for d in dims) or not dims:
            raise ValueError("complex needs at least one degree with nonnegative dimensions")
        if len(self.differentials) != len(dims) - 1:
            raise ValueError(f"expected {len(dims) - 1} differentials, got {len(self.differentials)}")
        diffs = []
        cores = []
        for i, d in enumerate(self.differentials):
            rows = tuple(tuple(LogMonomial.coerce(x) for x in r) for r in d)
            if len(rows) != dims[i + 1] or any(len(r) != dims[i] for r in rows):
                raise ValueError(f"differential {i} must be {dims[i + 1]} x {dims[i]}")
            flat, power = _homogeneous([x for r in rows for x in r], f"differential {i}")
            core = [flat[k * dims[i]:(k + 1) * dims[i]] for k in range(dims[i + 1])]
            diffs.append(rows)
            cores.append((core, power))
        object.__setattr__(self, "differentials", tuple(diffs))
        object.__setattr__(self, "_cores", tuple(cores))
        for i in range(len(cores) - 1):
            (a, _), (b, _) = cores[i], cores[i + 1]
            for row in b:
                for j in range(dims[i]):
                    if sum(row[k] * a[k][j] for k in range(dims[i + 1])) != 0:
                        raise ValueError(f"D^{i + 1} o D^{i} != 0")
        if not self.bases:
            bases = tuple(_coordinate_basis(d) for d in dims)
        else:
            if len(self.bases) != len(dims):
                raise ValueError("one basis per degree is required")
            bases = tuple(_coerce_basis(b, d, i) for i, (b, d) in enumerate(zip(self.bases, dims)))
        object.__setattr__(self, "bases", bases)
        if self.labels is not None:
            labels = tuple(tuple(str(x) for x in ls) for ls in self.labels)
            if len(labels) != len(dims) or any(len(ls) != d for ls, d in zip(labels, dims)):
                raise ValueError("labels must match the dimensions")
            object.__setattr__(self, "labels", labels)

    @property
    def length(self) -> int:
        return len(self.dims) - 1

    def differential_core(self, i: int) -> tuple[list[list[Fraction]], int]:
        """Rational part and ``ell``-exponent of ``D^i``; zero maps out of range."""
        if 0 <= i < len(self._cores):
            return self._cores[i]
        rows = self.dims[i + 1] if 0 <= i + 1 < len(self.dims) else 0
        cols = self.dims[i] if 0 <= i < len(self.dims) else 0
        return [[Fraction(0)] * cols for _ in range(rows)], 0

    def differential_rank(self, i: int) -> int:
        core, _ = self.differential_core(i)
        return rational_rank(core) if core and core[0] else 0

    def with_bases(self, bases) -> BasedComplex:
        return BasedComplex(self.dims, self.differentials, tuple(bases), self.labels)


def _coordinate_basis(d: int) -> tuple[tuple[LogMonomial, ...], ...]:
    one, zero = LogMonomial(1), LogMonomial(0)
    return tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))


def _coerce_basis(vectors, d: int, degree: int):
    vecs = tuple(tuple(LogMonomial.coerce(x) for x in v) for v in vectors)
    if len(vecs) != d or any(len(v) != d for v in vecs):
        raise ValueError(f"basis of degree {degree} must consist of {d} vectors of length {d}")
    return vecs


def _basis_cores(vectors) -> tuple[list[list[Fraction]], int]:
    """Rational rows of a homogeneous-vector basis and the total ``ell``-exponent."""
    rows, total = [], 0
    for v in vectors:
        r, p = _homogeneous(v, "basis vector")
        rows.append(r)
        total += p
    return rows, total


def basis_ratio(new, old) -> LogMonomial:
    """``[new/old]`` for bases made of ``ell``-homogeneous vectors."""
    new = [tuple(LogMonomial.coerce(x) for x in v) for v in new]
    old = [tuple(LogMonomial.coerce(x) for x in v) for v in old]
    rn, pn = _basis_cores(new)
    ro, po = _basis_cores(old)
    for r in rn + ro:
        if all(x == 0 for x in r):
            raise SingularBaseChange("zero vector in basis")
    return LogMonomial(base_change_det(ro, rn), pn - po)


def is_acyclic(c: BasedComplex) -> bool:
    """Exactness at every degree, checked by rank-nullity on the rational parts."""
    return all(
        c.dims[i] == c.differential_rank(i - 1) + c.differential_rank(i)
        for i in range(len(c.dims))
    )


def _nullspace(core: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    if not core:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = row_echelon(core)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        out.append(v)
    return out


def _apply(core: list[list[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum(a * b for a, b in zip(row, v)) for row in core]


def _preimages(c: BasedComplex, i: int, rng: random.Random | None) -> list[list[Fraction]]:
    """Rational vectors of ``V^i`` whose images form a basis of ``D(V^i)``.

    Deterministically these are the coordinate vectors at the pivot columns
    of ``D^i``; with ``rng`` they are scrambled by a random invertible
    combination and shifted by random kernel vectors.
    """
    core, _ = c.differential_core(i)
    n = c.dims[i]
    if not core or n == 0:
        return []
    _, col_pivots = row_echelon(core)
    base = [[Fraction(int(j == p)) for j in range(n)] for p in col_pivots]
    if rng is None or not base:
        return base
    k = len(base)
    while True:
        mix = [[Fraction(rng.randint(-3, 3)) for _ in range(k)] for _ in range(k)]
        if rational_det(mix) != 0:
            break
    vecs = [[sum(mix[a][b] * base[b][j] for b in range(k)) for j in range(n)] for a in range(k)]
    kern = _nullspace(core, n)
    for v in vecs:
        for w in kern:
            t = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
            for j in range(n):
                v[j] += t * w[j]
    return vecs


def complex_determinant(c: BasedComplex, rng: random.Random | None = None) -> LogMonomial:
    """``det(V, D, b) = prod_i |[b^i / (c^i, c~^i)]|^((-1)^i)``.

    ``c^i`` is the image under ``D`` of the chosen preimages ``c~^(i-1)``.
    The result does not depend on the choices; pass ``rng`` to randomize them.
    """
    if not is_acyclic(c):
        raise NotAcyclic("complex is not acyclic")
    result = LogMonomial(1)
    pre = [_preimages(c, i, rng) for i in range(len(c.dims))]
    for i, n in enumerate(c.dims):
        if n == 0:
            continue
        if i > 0:
            core, power = c.differential_core(i - 1)
            images = [_apply(core, v) for v in pre[i - 1]]
        else:
            images, power = [], 0
        adapted = images + pre[i]
        b_rows, b_power = _basis_cores(c.bases[i])
        ratio = LogMonomial(
            rational_det(b_rows) / rational_det(adapted),
            b_power - power * len(images),
        )
        if ratio.is_zero:
            raise SingularBaseChange(f"basis of degree {i} is degenerate")
        result = result * abs(ratio) ** (1 if i % 2 == 0 else -1)
    return result


def adapted_bases(c: BasedComplex) -> tuple:
    """Bases ``(D c~^(i-1), c~^i)`` for which the determinant is exactly 1."""
    if not is_acyclic(c):
        raise NotAcyclic("complex is not acyclic")
    pre = [_preimages(c, i, None) for i in range(len(c.dims))]
    out = []
    for i in range(len(c.dims)):
        vecs = []
        if i > 0:
            core, power = c.differential_core(i - 1)
            vecs += [tuple(LogMonomial(x, power) for x in _apply(core, v)) for v in pre[i - 1]]
        vecs += [tuple(LogMonomial(x) for x in v) for v in pre[i]]
        out.append(tuple(vecs))
    return tuple(out)


def determinant_base_change(c: BasedComplex, new_bases) -> LogMonomial:
    """Determinant in ``new_bases`` from the old one: ``det_a * prod |[b^i/a^i]|^((-1)^i)``."""
    new_bases = tuple(new_bases)
    if len(new_bases) != len(c.dims):
        raise SingularBaseChange("one new basis per degree is required")
    out = complex_determinant(c)
    for i, (new, old) in enumerate(zip(new_bases, c.bases)):
        r = basis_ratio(new, old)
        out = out * abs(r) ** (1 if i % 2 == 0 else -1)
    return out


def split_complex(multiplicities: Sequence[int], scale: LogMonomial | int = 1) -> BasedComplex:
    """The complex ``(M^(.-1) + M^., D)`` with ``D(m', m) = (scale * m, 0)``.

    ``multiplicities[i] = dim M^i``; the complex has degrees ``0..len`` and
    concatenated coordinate bases ``(m', m)``.
    """
    m = [0] + list(multiplicities) + [0]
    dims = [m[i] + m[i + 1] for i in range(len(m) - 1)]
    s = LogMonomial.coerce(scale)
    zero = LogMonomial(0)
    diffs = []
    for i in range(len(dims) - 1):
        # V^i = M^(i-1) (+) M^i  ->  V^(i+1) = M^i (+) M^(i+1)
        rows = []
        for a in range(dims[i + 1]):
            row = []
            for b in range(dims[i]):
                hit = a < m[i + 1] and b == m[i] + a
                row.append(s if hit else zero)
            rows.append(tuple(row))
        diffs.append(tuple(rows))
    return BasedComplex(tuple(dims), tuple(diffs), ())


# --------------------------------------------------------------------------
# Torsion bookkeeping
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/t_1 + ... + Z/t_k`` with ``t_j > 1`` and ``t_j | t_(j+1)``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors must divide each other: {self.torsion}")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("invariant factors must exceed 1")

    @property
    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class HomologySummary:
    """Per-degree abelian groups, degree ``i`` at index ``i``."""

    groups: tuple[AbelianGroup, ...]

    def ranks(self) -> tuple[int, ...]:
        return tuple(g.rank for g in self.groups)


def _alternating(i: int) -> int:
    return 1 if i % 2 == 0 else -1


def torsion_from_homology(h: HomologySummary) -> Fraction:
    """``prod_i |H_i tors|^((-1)^i)``."""
    out = Fraction(1)
    for i, g in enumerate(h.groups):
        out *= Fraction(g.torsion_order) ** _alternating(i)
    return out


def tau_base_change(tau, ratios):
    """``tau * prod_i |ratios[i]|^((-1)^i)``.

    Works for rational ratios and for :class:`LogMonomial` ratios alike.
    """
    out = tau
    for i, r in enumerate(ratios):
        if r == 0:
            raise ZeroRatio(f"base-change ratio in degree {i} is zero")
        out = out * abs(r) ** _alternating(i)
    return out


def dual_ratio(r):
    """``[b*/a*] = [b/a]^(-1)`` for dual bases."""
    if r == 0:
        raise ZeroRatio("dual of a zero ratio")
    if isinstance(r, LogMonomial):
        return r ** -1
    return 1 / Fraction(r)
