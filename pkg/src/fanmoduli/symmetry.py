"""Action of the fan-isomorphism group on calibrations and kernels.

A group element is stored through its ``n x n`` integer matrix ``H``: ray
columns are permuted by ``tau``, virtual columns by ``sigma``, and free
columns (the set J) may be mixed by ``alpha`` / ``A``.  It acts by

    g . h = L h H^{-1},

where ``L`` is the unique matrix putting the identity back on columns
``1..d``.  With this normalisation ``(g1 g2) . h = g1 . (g2 . h)`` and the
product of group elements is the product of their ``H`` matrices, so the
action on kernels is ``k -> H k`` and both are left actions.  For a pure
permutation ``pi`` this sends column ``j`` of ``h`` to column ``pi(j)`` and
row ``j`` of ``k`` to row ``pi(j)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .combinatorics import (
    CombinatorialType,
    RayPermutation,
    automorphism_group,
    require_valid,
    virtual_permutations,
)
from .exact import PreconditionError, RationalMatrix, det, rank
from .moduli import Calibration, UnsupportedTypeError, is_admissible


@dataclass(frozen=True)
class GroupElement:
    tau: RayPermutation
    sigma: RayPermutation
    alpha: tuple | None = None  # per j in J: integer column over the rays
    A: tuple | None = None  # integer matrix on J, rows/cols in ascending J order

    def matrix(self, D: CombinatorialType) -> RationalMatrix:
        n = D.n
        cols = [[0] * n for _ in range(n)]
        t, s = self.tau.as_dict(), self.sigma.as_dict()
        for r in D.rays:
            cols[r - 1][t.get(r, r) - 1] = 1
        for v in D.virtual:
            cols[v - 1][s.get(v, v) - 1] = 1
        J = D.free
        for a, j in enumerate(J):
            if self.alpha is not None:
                for r, x in zip(D.rays, self.alpha[a]):
                    cols[j - 1][r - 1] = x
            if self.A is not None:
                for b, jj in enumerate(J):
                    cols[j - 1][jj - 1] = self.A[b][a]
            else:
                cols[j - 1][j - 1] = 1
        return RationalMatrix.from_columns(cols)

    def permutation(self) -> dict:
        """Combined index permutation (rays and virtual; J fixed)."""
        m = self.tau.as_dict()
        m.update(self.sigma.as_dict())
        return m

    def is_identity(self) -> bool:
        return (
            self.tau.is_identity()
            and self.sigma.is_identity()
            and self.alpha is None
            and self.A is None
        )

    def compose(self, other: "GroupElement") -> "GroupElement":
        """``self * other``: act by ``other`` first."""
        if self.alpha is not None or self.A is not None or other.alpha is not None or other.A is not None:
            raise NotImplementedError("composition of general block elements is done on matrices")
        return GroupElement(self.tau.compose(other.tau), self.sigma.compose(other.sigma))

    def inverse(self) -> "GroupElement":
        if self.alpha is not None or self.A is not None:
            raise NotImplementedError("inverse of general block elements is done on matrices")
        return GroupElement(self.tau.inverse(), self.sigma.inverse())


def identity_element(D: CombinatorialType) -> GroupElement:
    return GroupElement(RayPermutation.identity(D.rays), RayPermutation.identity(D.virtual))


def check_element(g: GroupElement, D: CombinatorialType) -> None:
    if tuple(sorted(g.tau.domain)) != D.rays:
        raise PreconditionError("tau must permute exactly the rays of D")
    if tuple(sorted(g.sigma.domain)) != D.virtual:
        raise PreconditionError("sigma must permute exactly the virtual generators")
    if not g.tau.preserves(D):
        raise PreconditionError("tau does not preserve the cone family")
    if g.A is not None:
        if abs(det(RationalMatrix(g.A))) != 1:
            raise PreconditionError("A must be unimodular")
        if any(x != int(x) for row in g.A for x in row):
            raise PreconditionError("A must be an integer matrix")


def group_elements(D: CombinatorialType) -> list[GroupElement]:
    """``Aut(D) x Sym(virtual)``; only defined for maximal types (J empty)."""
    require_valid(D)
    if D.free:
        raise UnsupportedTypeError("the group is infinite when J is nonempty; orbits need a maximal type")
    return [GroupElement(t, s) for t, s in product(automorphism_group(D), virtual_permutations(D))]


def act(g: GroupElement, h: Calibration, D: CombinatorialType) -> Calibration:
    check_element(g, D)
    d = h.d
    # tau^{-1}([1, d]) must be a cone, else L is ill-posed
    pinv = {v: k for k, v in g.permutation().items()}
    if tuple(sorted(pinv.get(i, i) for i in range(1, d + 1))) not in D:
        raise PreconditionError("tau does not map a cone onto the standard cone [1, d]")
    H = g.matrix(D)
    hH = h.matrix @ H.inverse()
    B = hH.select_columns(range(d))
    if det(B) == 0:
        raise PreconditionError("L is singular: the calibration is not admissible")
    return Calibration(B.inverse() @ hH)


def orbit(h: Calibration, D: CombinatorialType) -> list[Calibration]:
    """Distinct images of h, sorted lexicographically."""
    if not is_admissible(h, D):
        raise PreconditionError("orbit needs an admissible calibration")
    return sorted({act(g, h, D) for g in group_elements(D)})


def canonical_form(h: Calibration, D: CombinatorialType) -> Calibration:
    """Lexicographically least element of the orbit (row-major entries)."""
    return orbit(h, D)[0]


def isomorphic(h1: Calibration, h2: Calibration, D: CombinatorialType) -> tuple[bool, GroupElement | None]:
    if not (is_admissible(h1, D) and is_admissible(h2, D)):
        raise PreconditionError("isomorphism test needs admissible calibrations")
    for g in group_elements(D):
        if act(g, h1, D) == h2:
            return True, g
    return False, None


def grassmann_act(g: GroupElement, k: RationalMatrix, D: CombinatorialType) -> RationalMatrix:
    """``H k``: the image of a kernel basis; columns span ker(g . h)."""
    if rank(k) != k.cols:
        raise PreconditionError("kernel representative must have full column rank")
    return g.matrix(D) @ k


def action_cocycle(g: GroupElement, k: RationalMatrix, rows: Sequence[int], D: CombinatorialType) -> RationalMatrix:
    """The matrix K with ``s_I(g.[k]) = (g . s_I([k])) K^{-1}``.

    ``rows`` is the chart: the (n-d)-subset of rows normalised to the
    identity by the section s_I.  K is the ``rows`` block of ``g . s_I([k])``.
    """
    from .grassmann import chart_normalize

    s = chart_normalize(k, rows).k
    moved = grassmann_act(g, s, D)
    K = moved.select_rows(i - 1 for i in rows)
    if det(K) == 0:
        raise PreconditionError(f"g.[k] is not in chart {list(rows)}")
    return K
