"""Kernel side of the moduli chart: Gale transforms, charts, Pluecker data.

Charts of Gr(n-d, R^n) are named here by the (n-d)-subset of *rows* of a
kernel basis that the section normalises to the identity.  The usual
naming by the transverse d-subset is its complement; :func:`complement`
converts between the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .combinatorics import CombinatorialType
from .exact import PreconditionError, RationalMatrix, det, kernel_basis, rank, sign
from .moduli import Calibration, _top_cones, is_admissible


def complement(subset: Sequence[int], n: int) -> tuple[int, ...]:
    s = set(subset)
    return tuple(i for i in range(1, n + 1) if i not in s)


def gale(h: Calibration) -> RationalMatrix:
    """Kernel basis of h; for a standard calibration ``[I | V]`` it is ``[-V ; I]``."""
    return kernel_basis(h.matrix)


@dataclass(frozen=True)
class ChartedKernel:
    k: RationalMatrix
    rows: tuple  # 1-based rows carrying the identity block

    def __post_init__(self):
        r = len(self.rows)
        if self.k.select_rows(i - 1 for i in self.rows) != RationalMatrix.identity(r):
            raise ValueError("charted kernel must carry the identity on its chart rows")

    @property
    def transverse(self) -> tuple[int, ...]:
        return complement(self.rows, self.k.rows)


def chart_normalize(k: RationalMatrix, rows: Sequence[int]) -> ChartedKernel:
    """The section s_I: ``k B^{-1}`` with ``B`` the ``rows`` block of k."""
    rows = tuple(sorted(rows))
    if len(rows) != k.cols:
        raise PreconditionError(f"a chart needs {k.cols} rows, got {len(rows)}")
    B = k.select_rows(i - 1 for i in rows)
    if det(B) == 0:
        raise PreconditionError(f"not in chart U_{list(rows)}: the row block is singular")
    return ChartedKernel(k @ B.inverse(), rows)


def transition(k: RationalMatrix, I: Sequence[int], J: Sequence[int]) -> RationalMatrix:
    """K_JI([k]) with ``s_J([k]) = s_I([k]) K_JI^{-1}``: the J block of s_I([k])."""
    sI = chart_normalize(k, I).k
    chart_normalize(k, J)  # raises when [k] is outside U_J
    return sI.select_rows(j - 1 for j in sorted(J))


def maximal_minors(k: RationalMatrix) -> dict[tuple, Fraction]:
    """All ``r x r`` row minors of an ``n x r`` matrix, keyed by row subset."""
    n, r = k.rows, k.cols
    return {S: det(k.select_rows(i - 1 for i in S)) for S in combinations(range(1, n + 1), r)}


@dataclass(frozen=True)
class PluckerVector:
    n: int
    rank: int
    coords: tuple  # tuple[(subset, Fraction), ...] in lexicographic subset order

    def __post_init__(self):
        if all(v == 0 for _, v in self.coords):
            raise ValueError("Pluecker vector cannot be zero")

    def __getitem__(self, subset) -> Fraction:
        subset = tuple(sorted(subset))
        for S, v in self.coords:
            if S == subset:
                return v
        raise KeyError(subset)

    def as_dict(self) -> dict:
        return dict(self.coords)

    def values(self) -> list[Fraction]:
        return [v for _, v in self.coords]


def normalize_projective(values: Sequence) -> list[Fraction]:
    """Clear denominators, divide by the gcd, make the first nonzero entry positive."""
    den = 1
    for x in values:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector")
    lead = next(x for x in ints if x != 0)
    s = 1 if lead > 0 else -1
    return [Fraction(s * x // g) for x in ints]


def plucker(k: RationalMatrix) -> PluckerVector:
    if rank(k) != k.cols:
        raise PreconditionError("Pluecker coordinates need a full-rank kernel basis")
    minors = maximal_minors(k)
    keys = sorted(minors)
    vals = normalize_projective([minors[S] for S in keys])
    return PluckerVector(k.rows, k.cols, tuple(zip(keys, vals)))


def plucker_from_dict(n: int, r: int, coords: dict) -> PluckerVector:
    keys = list(combinations(range(1, n + 1), r))
    missing = [S for S in keys if S not in coords]
    if missing:
        raise ValueError(f"missing Pluecker coordinate {list(missing[0])}")
    return PluckerVector(n, r, tuple((S, Fraction(coords[S])) for S in keys))


def three_term_relation(p: PluckerVector) -> Fraction:
    """``p12 p34 - p13 p24 + p14 p23`` on the first four indices (rank 2)."""
    if p.rank != 2:
        raise ValueError("three-term relation is for rank 2")
    return p[(1, 2)] * p[(3, 4)] - p[(1, 3)] * p[(2, 4)] + p[(1, 4)] * p[(2, 3)]


def plucker_relations(p: PluckerVector) -> list[Fraction]:
    """Quadratic Grassmann-Pluecker relations, evaluated at ``p``.

    For every (r-1)-subset S and (r+1)-subset T:
    ``sum_j (-1)^j p[S + t_j] p[T - t_j] = 0`` with signed (unsorted) brackets.
    """
    n, r = p.n, p.rank
    vals = p.as_dict()

    def bracket(seq):
        if len(set(seq)) < len(seq):
            return Fraction(0)
        inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
        return (-1) ** inv * vals[tuple(sorted(seq))]

    out = []
    idx = range(1, n + 1)
    for S in combinations(idx, r - 1):
        for T in combinations(idx, r + 1):
            total = Fraction(0)
            for j, t in enumerate(T):
                rest = T[:j] + T[j + 1:]
                total += (-1) ** j * bracket(S + (t,)) * bracket(rest)
            out.append(total)
    return out


@dataclass(frozen=True)
class ClosureCondition:
    I: tuple  # maximal cones; the coordinates used are their complements
    J: tuple
    sign: int  # required weak sign of p_{I^c} p_{J^c}

    def to_json(self, n: int) -> dict:
        return {
            "cones": [list(self.I), list(self.J)],
            "coords": ["".join(map(str, complement(self.I, n))), "".join(map(str, complement(self.J, n)))],
            "sign": self.sign,
        }


def closure_conditions(D: CombinatorialType, h0: Calibration) -> list[ClosureCondition]:
    """Weak sign conditions on Pluecker products for the compactified chart.

    One condition per unordered pair of distinct maximal cones; the required
    sign is read off the base point.  Diagonal conditions are vacuous and are
    emitted only when D has a single maximal cone, so the list is never empty.
    """
    if not is_admissible(h0, D):
        raise PreconditionError("base calibration is not admissible")
    cones = _top_cones(D)
    p = plucker(gale(h0))
    n = D.n
    val = {c: p[complement(c, n)] for c in cones}
    pairs = list(combinations(cones, 2)) or [(cones[0], cones[0])]
    out = []
    for I, J in pairs:
        s = sign(val[I] * val[J])
        if s == 0:
            raise AssertionError("base Pluecker coordinate vanishes on a maximal cone")
        out.append(ClosureCondition(I, J, s))
    return out


def in_closure(p: PluckerVector, conditions: Sequence[ClosureCondition]) -> bool:
    """Necessary condition for membership in the compactified chart."""
    n = p.n
    for c in conditions:
        a, b = complement(c.I, n), complement(c.J, n)
        if len(a) != p.rank or len(b) != p.rank:
            raise ValueError("condition does not match the Pluecker vector's rank")
        if sign(p[a] * p[b]) * c.sign < 0:
            return False
    return True
