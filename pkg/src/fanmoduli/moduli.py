"""Calibrations, determinant sign vectors and admissibility.

A calibration is a ``d x n`` rational matrix whose column ``i`` is the image
of the ``i``-th generator.  In the standard chart the first ``d`` columns
are the identity; other charts put the identity on another ``d``-subset of
columns (used when scanning boundary strata).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import cos, pi, sin
from typing import Iterable, Sequence

from .combinatorics import (
    CombinatorialType,
    cycle_type,
    full_cone_type,
    is_complete,
    product_p1_p2,
    require_valid,
    simplex_type,
)
from .exact import (
    PreconditionError,
    RationalMatrix,
    cone_contains,
    cone_intersection,
    det,
    rank,
    ray_list,
    sign,
    to_rational,
)


class UnsupportedTypeError(ValueError):
    """The combinatorial type is outside what an operation handles."""


@dataclass(frozen=True)
class Calibration:
    matrix: RationalMatrix
    chart: tuple = ()  # 1-based identity columns; () means (1, ..., d)

    def __post_init__(self):
        M = self.matrix
        chart = tuple(self.chart) or tuple(range(1, M.rows + 1))
        object.__setattr__(self, "chart", chart)
        if len(chart) != M.rows or len(set(chart)) != len(chart):
            raise ValueError(f"chart must list d={M.rows} distinct columns")
        if any(c < 1 or c > M.cols for c in chart):
            raise ValueError("chart column out of range")
        ident = RationalMatrix.identity(M.rows)
        if M.select_columns(c - 1 for c in chart) != ident:
            raise ValueError(f"columns {list(chart)} must form the identity matrix")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], chart=()) -> "Calibration":
        return cls(RationalMatrix.from_columns(columns), tuple(chart))

    @classmethod
    def standard(cls, extra_columns: Sequence[Sequence], d: int | None = None) -> "Calibration":
        """Identity on e_1..e_d followed by ``extra_columns``."""
        d = d if d is not None else len(extra_columns[0])
        ident = [[int(i == j) for i in range(d)] for j in range(d)]
        return cls.from_columns(ident + [list(c) for c in extra_columns])

    @property
    def d(self) -> int:
        return self.matrix.rows

    @property
    def n(self) -> int:
        return self.matrix.cols

    def column(self, i: int) -> tuple[Fraction, ...]:
        """Column of generator ``i`` (1-based)."""
        return self.matrix.column(i - 1)

    def columns(self, idx: Iterable[int]) -> RationalMatrix:
        return self.matrix.select_columns(i - 1 for i in idx)

    def free_columns(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if i not in self.chart)

    def coordinates(self) -> tuple[Fraction, ...]:
        """Chart coordinates: entries of the non-identity columns, column by column."""
        return tuple(x for i in self.free_columns() for x in self.column(i))

    def with_coordinates(self, coords: Sequence) -> "Calibration":
        coords = [to_rational(x) for x in coords]
        d = self.d
        rows = [list(r) for r in self.matrix.to_rows()]
        for k, i in enumerate(self.free_columns()):
            for r in range(d):
                rows[r][i - 1] = coords[k * d + r]
        return Calibration(RationalMatrix._trusted(tuple(map(tuple, rows)), self.n), self.chart)

    def in_chart(self, chart: Sequence[int]) -> "Calibration":
        """Re-express ``L h`` with identity on ``chart`` (same point of the moduli)."""
        chart = tuple(chart)
        B = self.columns(chart)
        if det(B) == 0:
            raise PreconditionError(f"calibration is not in chart {list(chart)}")
        return Calibration(B.inverse() @ self.matrix, chart)

    def __lt__(self, other: "Calibration") -> bool:
        return self.matrix < other.matrix


@dataclass(frozen=True)
class SignVector:
    """Signs of the maximal-cone determinants, keyed by cone."""

    items: tuple  # tuple[(cone, sign), ...] in cone order

    @classmethod
    def from_dict(cls, m: dict) -> "SignVector":
        return cls(tuple(sorted((tuple(k), int(v)) for k, v in m.items())))

    def __getitem__(self, cone) -> int:
        cone = tuple(cone)
        for k, v in self.items:
            if k == cone:
                return v
        raise KeyError(cone)

    def keys(self) -> list[tuple]:
        return [k for k, _ in self.items]

    def values(self) -> list[int]:
        return [v for _, v in self.items]

    def as_dict(self) -> dict:
        return dict(self.items)

    def zeros(self) -> tuple:
        return tuple(k for k, v in self.items if v == 0)

    def has_zero(self) -> bool:
        return any(v == 0 for _, v in self.items)

    def negate(self) -> "SignVector":
        return SignVector(tuple((k, -v) for k, v in self.items))


def _top_cones(D: CombinatorialType) -> tuple:
    maxc = D.maximal_cones
    bad = [c for c in maxc if len(c) != D.d]
    if bad:
        raise UnsupportedTypeError(
            f"maximal cone {list(bad[0])} has {len(bad[0])} generators, expected d={D.d}"
        )
    return maxc


def cone_det(h: Calibration, cone: Sequence[int]) -> Fraction:
    """Determinant of the columns of ``cone`` in ascending index order."""
    return det(h.columns(sorted(cone)))


def det_signs(h: Calibration, D: CombinatorialType) -> SignVector:
    if h.n != D.n or h.d != D.d:
        raise UnsupportedTypeError("calibration and type disagree on (d, n)")
    cones = _top_cones(D)
    return SignVector(tuple((c, sign(cone_det(h, c))) for c in cones))


def in_U(h: Calibration, D: CombinatorialType) -> bool:
    return not det_signs(h, D).has_zero()


def is_admissible(h: Calibration, D: CombinatorialType) -> bool:
    """Geometric check that the columns of h realize a fan of type exactly D.

    (a) every cone of D has independent generators, (b) maximal cones meet
    along the cone of their common generators, (c) no ray generator lies in
    a maximal cone that does not contain it.
    """
    require_valid(D)
    if h.n != D.n or h.d != D.d:
        return False
    for c in D.cones:
        if c and rank(h.columns(c)) < len(c):
            return False
    maxc = D.maximal_cones
    gens = {c: [h.column(i) for i in c] for c in maxc}
    for a, b in combinations(maxc, 2):
        common = sorted(set(a) & set(b))
        expected = ray_list(h.column(i) for i in common)
        if cone_intersection(gens[a], gens[b]) != expected:
            return False
    for j in D.rays:
        v = h.column(j)
        for c in maxc:
            if j not in c and cone_contains(gens[c], v):
                return False
    return True


@dataclass(frozen=True)
class Inequality:
    cone: tuple
    sign: int

    def to_json(self) -> dict:
        return {"cone": list(self.cone), "sign": self.sign}


def component_inequalities(D: CombinatorialType, h0: Calibration) -> list[Inequality]:
    """Sign conditions cutting out the component of the moduli chart through h0.

    For complete types (see :func:`describes_whole_chart`) the component is
    all of the admissible set.
    """
    if not is_admissible(h0, D):
        raise PreconditionError("base calibration is not admissible for this type")
    return [Inequality(c, s) for c, s in det_signs(h0, D).items]


def describes_whole_chart(D: CombinatorialType) -> bool:
    return is_complete(D)


def satisfies(h: Calibration, inequalities: Iterable[Inequality]) -> bool:
    return all(sign(cone_det(h, q.cone)) == q.sign for q in inequalities)


def same_stratum(h: Calibration, h0: Calibration, D: CombinatorialType) -> bool:
    s, s0 = det_signs(h, D), det_signs(h0, D)
    return s == s0 and not s.has_zero()


def inequality_polynomials(D: CombinatorialType, h0: Calibration, names: Sequence[str] | None = None):
    """Symbolic form of the inequalities as ``(sign * det_I, "> 0")`` pairs.

    Chart coordinates are named column by column (``names`` defaults to
    x1, x2, ...).  Returns a list of ``(cone, sympy expression)`` where the
    expression is required to be positive.
    """
    import sympy

    free = h0.free_columns()
    k = len(free) * h0.d
    names = list(names) if names is not None else [f"x{i + 1}" for i in range(k)]
    syms = sympy.symbols(names)
    cols = [list(map(sympy.Rational, map(str, h0.column(i)))) for i in range(1, h0.n + 1)]
    for m, i in enumerate(free):
        cols[i - 1] = list(syms[m * h0.d:(m + 1) * h0.d])
    out = []
    for q in component_inequalities(D, h0):
        M = sympy.Matrix([[cols[i - 1][r] for i in q.cone] for r in range(h0.d)])
        out.append((q.cone, sympy.expand(q.sign * M.det())))
    return out


# --------------------------------------------------------------------------
# reference calibrations
# --------------------------------------------------------------------------

def simplex_reference(d: int) -> Calibration:
    """Base point of S_d: the last generator is (-1, ..., -1)."""
    return Calibration.standard([[-1] * d])


def cycle_reference(n: int) -> Calibration:
    """Base point of C_n: rays 3..n spread evenly over angles (pi/2, 2 pi).

    Angles are rounded to rationals and the result is checked exactly.
    """
    cols = []
    for k in range(3, n + 1):
        t = pi / 2 + (k - 2) * (3 * pi / 2) / (n - 1)
        cols.append([_round(cos(t)), _round(sin(t))])
    h = Calibration.standard(cols, d=2)
    if not is_admissible(h, cycle_type(n)):
        raise AssertionError(f"reference calibration for C_{n} failed the admissibility check")
    return h


def _round(x: float) -> Fraction:
    f = Fraction(x).limit_denominator(1000)
    return Fraction(round(f)) if abs(f - round(f)) < Fraction(1, 1000) else f


def product_reference() -> Calibration:
    """Base point of P^1 x P^2 in chart labels: v4 = (-1,0,0), v5 = (0,-1,-1)."""
    return Calibration.standard([[-1, 0, 0], [0, -1, -1]])


def full_cone_reference(d: int) -> Calibration:
    return Calibration.from_columns([[int(i == j) for i in range(d)] for j in range(d)])


NAMED_TYPES = {
    "S": simplex_type,
    "C": cycle_type,
    "P1xP2": lambda: product_p1_p2(True),
    "orthant": full_cone_type,
}


def reference_calibration(D: CombinatorialType) -> Calibration | None:
    """Shipped base point for a recognised named type, else None."""
    if D.n == D.d + 1 and D == simplex_type(D.d):
        return simplex_reference(D.d)
    if D.d == 2 and D.n >= 3 and D == cycle_type(D.n):
        return cycle_reference(D.n)
    if D == product_p1_p2(True):
        return product_reference()
    if D.n == D.d and D == full_cone_type(D.d):
        return full_cone_reference(D.d)
    return None
