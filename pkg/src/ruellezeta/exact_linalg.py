"""Arbitrary-precision integer and rational linear algebra.

Everything here works over Python ``int`` and :class:`fractions.Fraction`;
no floating point is used anywhere in this module.  Empty matrices (zero rows
or zero columns) are legal throughout, with ``det`` of a ``0 x 0`` matrix
equal to 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import BadDegree, SingularBaseChange

Rational = Fraction
Vector = tuple


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable ``rows x cols`` integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntegerMatrix:
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(
            [self.col(j) for j in range(self.cols)], self.rows
        )

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols)
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def _zip(self, other: IntegerMatrix, op) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntegerMatrix(self.rows, self.cols,
                             tuple(op(a, b) for a, b in zip(self.entries, other.entries)))

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: int) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __pow__(self, k: int) -> IntegerMatrix:
        if not self.is_square or k < 0:
            raise ValueError("matrix power needs a square matrix and k >= 0")
        result = IntegerMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def minus_identity(self) -> IntegerMatrix:
        return self - IntegerMatrix.identity(self.rows)

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum(self[i, i] for i in range(self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntegerMatrix:
        return IntegerMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def det(self) -> int:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.to_rows())

    def rank(self) -> int:
        return rational_rank(self.to_rows())

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.to_rows()!r})"


def as_matrix(a) -> IntegerMatrix:
    if isinstance(a, IntegerMatrix):
        return a
    return IntegerMatrix.from_rows(a)


def bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; ``rows`` is consumed."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / m[k][k]
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q with first-nonzero pivoting.

    Returns the nonzero rows of the RREF and the pivot column indices.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def rational_solve(a_rows: Sequence[Sequence], b_rows: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """Solve ``X @ A = B`` for ``X`` over Q, with ``A`` of full row rank.

    Each row of ``B`` is written as a combination of the rows of ``A``.
    Returns ``None`` when some row of ``B`` is outside the row space.
    """
    k = len(a_rows)
    n = len(a_rows[0]) if k else (len(b_rows[0]) if b_rows else 0)
    # Augment A^T | B^T and eliminate: columns of A^T are the a_i.
    aug = [[Fraction(a_rows[j][i]) for j in range(k)] + [Fraction(b[i]) for b in b_rows]
           for i in range(n)]
    red, pivots = row_echelon(aug)
    if any(p >= k for p in pivots):
        return None
    if len(pivots) != k:
        raise SingularBaseChange("reference vectors are linearly dependent")
    x = [[Fraction(0)] * k for _ in b_rows]
    for r, p in enumerate(pivots):
        for bi in range(len(b_rows)):
            x[bi][p] = red[r][k + bi]
    return x


def rational_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def unimodular_inverse(u: IntegerMatrix) -> IntegerMatrix:
    inv = rational_inverse(u.to_rows())
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return IntegerMatrix.from_rows([[int(x) for x in r] for r in inv], u.rows)


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right`` is diagonal with entries ``diag`` (padded by zeros)."""

    left: IntegerMatrix
    diag: tuple[int, ...]
    right: IntegerMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    def diagonal_matrix(self) -> IntegerMatrix:
        r, c = self.left.rows, self.right.rows
        return IntegerMatrix(r, c, tuple(self.diag[i] if i == j and i < len(self.diag) else 0
                                         for i in range(r) for j in range(c)))


def smith_normal_form(a: IntegerMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivoting picks the smallest nonzero absolute value in the active block and
    reduces the pivot row and column by Euclidean steps until both are clear,
    then enforces divisibility of the remaining block.
    """
    a = as_matrix(a)
    nr, nc = a.rows, a.cols
    m = a.to_rows()
    left = IntegerMatrix.identity(nr).to_rows()
    right = IntegerMatrix.identity(nc).to_rows()

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        m[dst] = [x - q * y for x, y in zip(m[dst], m[src])]
        left[dst] = [x - q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        for row in m:
            row[dst] -= q * row[src]
        for row in right:
            row[dst] -= q * row[src]

    diag: list[int] = []
    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    v = m[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if m[i][t]:
                    add_row(i, t, m[i][t] // p)
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, nc):
                if m[t][j]:
                    add_col(j, t, m[t][j] // p)
                    dirty = dirty or m[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, nr)
                        for j in range(t + 1, nc) if m[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row into the pivot row and retry
            add_row(t, bad, -1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            left[t] = [-x for x in left[t]]
        diag.append(m[t][t])
    return SmithForm(
        IntegerMatrix.from_rows(left, nr),
        tuple(diag),
        IntegerMatrix.from_rows(right, nc),
    )


def invariant_factors(a: IntegerMatrix) -> tuple[int, ...]:
    return smith_normal_form(a).diag


def hermite_rows(vectors: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Unimodular row operations only, so the span is preserved; pivots are
    positive and entries above each pivot are reduced into ``[0, pivot)``.
    """
    m = [list(v) for v in vectors]
    r = 0
    for c in range(dim):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[i0] = m[i0], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    done = done and m[i][c] == 0
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
    return [tuple(v) for v in m[:r]]


def kernel_basis(a: IntegerMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel ``{x in Z^cols : A x = 0}``.

    The kernel is spanned by the trailing columns of the right Smith
    transform, so it is saturated (a direct summand of ``Z^cols``).  The basis
    is returned in Hermite form for determinism.
    """
    a = as_matrix(a)
    snf = smith_normal_form(a)
    r = snf.rank
    right = snf.right
    vecs = [right.col(j) for j in range(r, a.cols)]
    return hermite_rows(vecs, a.cols)


@dataclass(frozen=True)
class Cokernel:
    """``Z^rows / A Z^cols`` as ``Z^free_rank + (+) Z/d``.

    ``basis_lift`` lists vectors of ``Z^rows`` projecting onto a basis of the
    free quotient, and :meth:`project` gives the free-quotient coordinates of
    any vector in that basis.
    """

    free_rank: int
    torsion: tuple[int, ...]
    basis_lift: tuple[tuple[int, ...], ...]
    left: IntegerMatrix
    rank: int

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.left.apply(v)[self.rank:]

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out


def cokernel(a: IntegerMatrix) -> Cokernel:
    a = as_matrix(a)
    snf = smith_normal_form(a)
    r = snf.rank
    left_inv = unimodular_inverse(snf.left)
    lift = tuple(left_inv.col(j) for j in range(r, a.rows))
    torsion = tuple(d for d in snf.diag[:r] if d > 1)
    return Cokernel(a.rows - r, torsion, lift, snf.left, r)


# --------------------------------------------------------------------------
# Bases, exterior powers, characteristic forms
# --------------------------------------------------------------------------


def base_change_det(a: Sequence[Sequence], b: Sequence[Sequence]) -> Fraction:
    """``[b/a] = det M`` where ``b_i = sum_j m_ij a_j``.

    ``a`` and ``b`` are families of rational vectors in a common ambient space.
    Raises :class:`SingularBaseChange` unless both are bases of the same span.
    """
    if len(a) != len(b):
        raise SingularBaseChange(f"bases have different sizes ({len(a)} vs {len(b)})")
    if not a:
        return Fraction(1)
    if len({len(v) for v in itertools.chain(a, b)}) != 1:
        raise SingularBaseChange("vectors of different lengths")
    if rational_rank(a) != len(a):
        raise SingularBaseChange("reference family is not linearly independent")
    m = rational_solve(a, b)
    if m is None:
        raise SingularBaseChange("new family does not lie in the span of the reference basis")
    d = rational_det(m)
    if d == 0:
        raise SingularBaseChange("new family is linearly dependent")
    return d


def exterior_power(a: IntegerMatrix, k: int) -> IntegerMatrix:
    """Matrix of ``Lambda^k A`` in the lexicographic basis of ``k``-subsets.

    Entry ``(I, J)`` is the minor ``det A[I, J]``.
    """
    a = as_matrix(a)
    if not a.is_square:
        raise ValueError("exterior power of a non-square matrix")
    n = a.rows
    if k < 0 or k > n:
        raise BadDegree(f"degree {k} outside [0, {n}]")
    subsets = list(itertools.combinations(range(n), k))
    rows = a.to_rows()
    out = [bareiss_det([[rows[i][j] for j in jj] for i in ii]) for ii in subsets for jj in subsets]
    return IntegerMatrix(len(subsets), len(subsets), tuple(out))


def charpoly(a: IntegerMatrix) -> tuple[int, ...]:
    """Coefficients of ``det(x I - A)``, ascending, via Faddeev-LeVerrier.

    All divisions are exact over Z.
    """
    a = as_matrix(a)
    n = a.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = IntegerMatrix.zeros(n, n)
    eye = IntegerMatrix.identity(n)
    for k in range(1, n + 1):
        m = a @ m + eye.scale(coeffs[n - k + 1])
        tr = (a @ m).trace()
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return tuple(coeffs)


# --------------------------------------------------------------------------
# Integer polynomials
# --------------------------------------------------------------------------


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """One-variable integer polynomial, coefficients ascending in degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    @classmethod
    def one_minus_t(cls) -> IntPolynomial:
        return cls((1, -1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def __pow__(self, k: int) -> IntPolynomial:
        out = IntPolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def divmod_one_minus_t(self) -> tuple[IntPolynomial, int]:
        """Return ``(q, r)`` with ``self = (1 - t) q + r``; ``r = self(1)``."""
        # synthetic division by (t - 1), then negate the quotient
        if self.is_zero:
            return self, 0
        c = self.coeffs
        q = [0] * (len(c) - 1)
        acc = 0
        for i in range(len(c) - 1, 0, -1):
            acc = acc + c[i]
            q[i - 1] = acc
        rem = acc + c[0]
        return IntPolynomial(tuple(-x for x in q)), rem

    def multiplicity_at_one(self) -> tuple[int, IntPolynomial]:
        """Return ``(k, g)`` with ``self = (1 - t)^k g`` and ``g(1) != 0``."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no finite multiplicity")
        k, g = 0, self
        while True:
            q, r = g.divmod_one_minus_t()
            if r != 0:
                return k, g
            k, g = k + 1, q

    def series(self, order: int) -> list[int]:
        return [self.coeffs[i] if i < len(self.coeffs) else 0 for i in range(order + 1)]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("-" if c < 0 else "+", body))
        s = "".join(f" {sgn} {b}" for sgn, b in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def poly_exact_div(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """``a / b`` for integer polynomials where ``b`` divides ``a`` and ``b(0) = +-1``."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if abs(b.coeffs[0]) != 1:
        raise ValueError("divisor must have constant term +-1")
    if a.is_zero:
        return a
    n = a.degree - b.degree
    if n < 0:
        raise ValueError("divisor does not divide dividend")
    rem = list(a.coeffs)
    q = [0] * (n + 1)
    b0 = b.coeffs[0]
    for i in range(n + 1):
        qi = rem[i] * b0
        q[i] = qi
        if qi:
            for j, bj in enumerate(b.coeffs):
                rem[i + j] -= qi * bj
    if any(rem):
        raise ValueError("divisor does not divide dividend")
    return IntPolynomial(tuple(q))


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor over Q, normalized to a primitive integer polynomial.

    For factors of polynomials with constant term 1 the result also has
    constant term 1.
    """
    x = [Fraction(c) for c in a.coeffs]
    y = [Fraction(c) for c in b.coeffs]
    while y:
        # x mod y
        x = list(x)
        while len(x) >= len(y) and x:
            f = x[-1] / y[-1]
            shift = len(x) - len(y)
            for j, yj in enumerate(y):
                x[shift + j] -= f * yj
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
    if not x:
        return IntPolynomial(())
    den = 1
    for c in x:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in x]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[0] < 0 or (ints[0] == 0 and ints[-1] < 0):
        ints = [-c for c in ints]
    return IntPolynomial(tuple(ints))


def det_one_minus_tA(a: IntegerMatrix) -> IntPolynomial:
    """``det(I - tA)``: the reversed characteristic polynomial of ``A``."""
    a = as_matrix(a)
    if not a.is_square:
        raise ValueError("det(1 - tA) needs a square matrix")
    return IntPolynomial(tuple(reversed(charpoly(a))))
