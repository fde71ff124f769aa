"""Exact rational matrices and simplicial-cone primitives.

Every sign, rank and containment decision in the package goes through this
module, so nothing here ever touches a float.  Scalars are
:class:`fractions.Fraction` (always kept in lowest terms with a positive
denominator).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction
Ray = tuple  # tuple[int, ...], primitive integer direction


class DimensionError(ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class PreconditionError(ValueError):
    """An operation was called outside of its domain (rank, independence...)."""


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused on purpose.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def sign(x) -> int:
    return (x > 0) - (x < 0)


class RationalMatrix:
    """Immutable ``rows x cols`` matrix of Fractions.

    Indexing is 0-based internally; all JSON/CLI formats are 1-based and
    column-major (a matrix is a list of its columns).
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows_ = tuple(tuple(to_rational(x) for x in row) for row in data)
        if rows_:
            width = len(rows_[0])
            if any(len(r) != width for r in rows_):
                raise DimensionError("ragged rows")
        else:
            width = cols or 0
        if cols is not None and width != cols:
            raise DimensionError("column count mismatch")
        self.rows = len(rows_)
        self.cols = width
        self._data = rows_
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def _trusted(cls, rows: tuple, cols: int) -> "RationalMatrix":
        """Wrap a tuple of tuples of Fractions without re-validating it."""
        M = cls.__new__(cls)
        M.rows = len(rows)
        M.cols = cols
        M._data = rows
        M._hash = None
        return M

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        return cls(rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "RationalMatrix":
        columns = [list(c) for c in columns]
        if not columns:
            return cls([[] for _ in range(nrows or 0)], cols=0)
        height = len(columns[0])
        if any(len(c) != height for c in columns):
            raise DimensionError("ragged columns")
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(height)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def to_rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def to_columns(self) -> list[list[Fraction]]:
        return [list(self.column(j)) for j in range(self.cols)]

    def entries(self) -> tuple[Fraction, ...]:
        """Row-major flattening; used as the lexicographic sort key."""
        return tuple(x for r in self._data for x in r)

    def select_columns(self, idx: Iterable[int]) -> "RationalMatrix":
        idx = list(idx)
        return RationalMatrix._trusted(tuple(tuple(r[j] for j in idx) for r in self._data), len(idx))

    def select_rows(self, idx: Iterable[int]) -> "RationalMatrix":
        return RationalMatrix._trusted(tuple(self._data[i] for i in idx), self.cols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_columns(self._data) if self.rows else RationalMatrix.zeros(self.cols, 0)

    # arithmetic ---------------------------------------------------------
    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        return RationalMatrix._trusted(
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols) for r in self._data),
            other.cols,
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum((a * to_rational(b) for a, b in zip(r, v)), Fraction(0)) for r in self._data)

    def scale(self, c) -> "RationalMatrix":
        c = to_rational(c)
        return RationalMatrix([[c * x for x in r] for r in self._data], cols=self.cols)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._data)]
        rref, pivots = _rref(aug, limit=n)
        if len(pivots) < n:
            raise PreconditionError("matrix is singular")
        return RationalMatrix([r[n:] for r in rref[:n]], cols=n)

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __lt__(self, other: "RationalMatrix") -> bool:
        return (self.shape, self.entries()) < (other.shape, other.entries())

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"RationalMatrix([{body}])"


def _rref(rows: list[list[Fraction]], limit: int | None = None):
    """Reduced row echelon form, pivoting only in the first ``limit`` columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if limit is None else limit
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def det(M: RationalMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    m = M._data
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    # scale to an integer matrix so Bareiss divisions are exact integer divisions
    den = 1
    for x in M.entries():
        den = den * x.denominator // gcd(den, x.denominator)
    a = [[int(x * den) for x in M.row(i)] for i in range(n)]
    flip = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            flip = -flip
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(flip * a[n - 1][n - 1], den**n)


def rank(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = _rref(M.to_rows())
    return len(pivots)


def nullspace(M: RationalMatrix) -> RationalMatrix:
    """Basis of ``{x : M x = 0}`` as columns, one per free variable.

    For ``M = [I | V]`` this returns exactly ``[-V ; I]``.
    """
    n = M.cols
    if M.rows == 0:
        return RationalMatrix.identity(n)
    rref, pivots = _rref(M.to_rows())
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][f]
        basis.append(v)
    return RationalMatrix.from_columns(basis, nrows=n) if basis else RationalMatrix.zeros(n, 0)


def kernel_basis(M: RationalMatrix) -> RationalMatrix:
    """Gale-transform representative: an ``n x (n-d)`` basis of ker(M).

    Requires M to have full row rank ``d``.
    """
    if rank(M) != M.rows:
        raise PreconditionError(f"kernel_basis needs full row rank {M.rows}, got {rank(M)}")
    return nullspace(M)


def solve(M: RationalMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of ``M x = b`` or None if inconsistent."""
    b = [to_rational(x) for x in b]
    if len(b) != M.rows:
        raise DimensionError("right-hand side length mismatch")
    aug = [list(r) + [bi] for r, bi in zip(M.to_rows(), b)]
    rref, pivots = _rref(aug, limit=M.cols)
    for r in range(len(pivots), len(rref)):
        if rref[r][-1] != 0:
            return None
    x = [Fraction(0)] * M.cols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][-1]
    return tuple(x)


# --------------------------------------------------------------------------
# rays and simplicial cones
# --------------------------------------------------------------------------

def primitive(v: Sequence) -> Ray:
    """Clear denominators and divide by the content; the direction is kept."""
    v = [to_rational(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise PreconditionError("the zero vector has no direction")
    return tuple(x // g for x in ints)


def ray_list(vectors: Iterable[Sequence]) -> tuple[Ray, ...]:
    """Canonical RayList: primitive, deduplicated, sorted."""
    return tuple(sorted({primitive(v) for v in vectors}))


def _independent_columns(gens: Sequence[Sequence]) -> RationalMatrix:
    A = RationalMatrix.from_columns([[to_rational(x) for x in g] for g in gens])
    if gens and rank(A) != len(gens):
        raise PreconditionError("cone generators are linearly dependent")
    return A


def cone_constraints(gens: Sequence[Sequence], dim: int):
    """H-description of the simplicial cone spanned by independent ``gens``.

    Returns ``(inequalities, equalities)`` as lists of covectors: ``x`` is in
    the cone iff ``f.x >= 0`` for every inequality and ``g.x == 0`` for every
    equality.  The covectors are the rows of ``[A | N]^{-1}`` where ``N``
    spans the orthogonal complement of the generators, i.e. ratios of
    complementary minors (Cramer).
    """
    gens = [list(g) for g in gens]
    k = len(gens)
    if k == 0:
        return [], [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    A = _independent_columns(gens)
    if A.rows != dim:
        raise DimensionError("generator dimension mismatch")
    N = nullspace(A.transpose())
    B = RationalMatrix.from_columns(A.to_columns() + N.to_columns())
    Binv = B.inverse()
    rows = [Binv.row(i) for i in range(dim)]
    return rows[:k], rows[k:]


def cone_contains(gens: Sequence[Sequence], v: Sequence) -> bool:
    """Exact test ``v in Cone(gens)`` for linearly independent generators."""
    v = [to_rational(x) for x in v]
    if not gens:
        return all(x == 0 for x in v)
    A = _independent_columns(gens)
    c = solve(A, v)
    return c is not None and all(x >= 0 for x in c)


def cone_intersection(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple[Ray, ...]:
    """Extreme rays of ``Cone(A) & Cone(B)`` by naive double description.

    Both generator lists must be linearly independent (strongly convex
    simplicial cones).  The intersection is pointed, so its extreme rays are
    the one-dimensional solution sets of ``d-1`` independent active
    constraints.
    """
    vecs = [list(v) for v in list(A) + list(B)]
    if not vecs:
        return ()
    dim = len(vecs[0])
    ia, ea = cone_constraints(A, dim)
    ib, eb = cone_constraints(B, dim)
    ineqs = ia + ib
    eqs = ea + eb
    E = RationalMatrix(eqs, cols=dim) if eqs else RationalMatrix.zeros(0, dim)
    base_rank = rank(E)
    if base_rank >= dim:
        return ()
    need = dim - 1 - base_rank
    found = set()
    for T in combinations(range(len(ineqs)), need):
        act = RationalMatrix(eqs + [ineqs[t] for t in T], cols=dim)
        ns = nullspace(act)
        if ns.cols != 1:
            continue
        r = ns.column(0)
        for cand in (r, tuple(-x for x in r)):
            if all(sum(f * x for f, x in zip(ineq, cand)) >= 0 for ineq in ineqs):
                found.add(primitive(cand))
                break
    return tuple(sorted(found))
