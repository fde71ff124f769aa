"""Boundary of the moduli chart: degenerate types, zero patterns, strata.

Pointwise degeneration removes every cone whose generators become
dependent (a ray whose generator vanishes is removed too).  The quotient
variety of a type is modelled only through its allowed zero patterns: a
point of C^n is present iff its set of vanishing coordinates is a member of
the type.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from .combinatorics import CombinatorialType, require_valid
from .exact import PreconditionError, rank, sign
from .moduli import Calibration, SignVector, _top_cones, cone_det, det_signs


class OutsideClosureError(ValueError):
    """A sign is opposite to the base sign vector: not in the closed chart."""


def degenerate_type(h: Calibration, D: CombinatorialType) -> CombinatorialType:
    require_valid(D)
    keep = [c for c in D.cones if not c or rank(h.columns(c)) == len(c)]
    return D.with_cones(keep)


def removed_cones(h: Calibration, D: CombinatorialType) -> list[tuple]:
    kept = degenerate_type(h, D).family
    return [c for c in D.cones if c not in kept]


@dataclass(frozen=True)
class ZeroPatternFamily:
    n: int
    allowed: frozenset  # frozenset of sorted tuples

    def __contains__(self, zero_set) -> bool:
        return tuple(sorted(zero_set)) in self.allowed

    def __le__(self, other: "ZeroPatternFamily") -> bool:
        return self.n == other.n and self.allowed <= other.allowed

    def sorted_patterns(self) -> list[tuple]:
        return sorted(self.allowed, key=lambda s: (len(s), s))


def zero_patterns(D: CombinatorialType) -> ZeroPatternFamily:
    require_valid_family(D)
    return ZeroPatternFamily(D.n, D.family)


def require_valid_family(D: CombinatorialType) -> None:
    fam = D.family
    for c in D.cones:
        for k in range(len(c)):
            if c[:k] + c[k + 1:] not in fam:
                raise PreconditionError("zero patterns need a downward-closed family")


def pattern_member(zero_set: Sequence[int], F: ZeroPatternFamily) -> bool:
    if any(i < 1 or i > F.n for i in zero_set):
        raise ValueError(f"zero set must lie in [1,{F.n}]")
    return tuple(sorted(set(zero_set))) in F.allowed


def point_in_S(z: Sequence[complex], F: ZeroPatternFamily) -> bool:
    """Membership of an actual point of C^n via its zero pattern."""
    return pattern_member([i + 1 for i, x in enumerate(z) if x == 0], F)


@dataclass(frozen=True)
class Stratum:
    sign_vector: SignVector  # oriented like the base point, zeros allowed
    degenerate: CombinatorialType
    witness: Calibration
    removed: tuple

    @property
    def zero_cones(self) -> tuple:
        return self.sign_vector.zeros()


def _oriented_signs(h: Calibration, D: CombinatorialType, eps: SignVector) -> SignVector:
    """Sign vector of h, flipped globally if needed to agree with ``eps``.

    In a non-standard chart the determinants are defined only up to the
    sign of the chart change, so a point belongs to the closed chart iff
    its signs match ``eps`` or ``-eps`` wherever they are nonzero.
    """
    s = det_signs(h, D)
    agree = all(v == 0 or v == e for (_, v), (_, e) in zip(s.items, eps.items))
    if agree:
        return s
    if h.chart != tuple(range(1, h.d + 1)):
        flipped = s.negate()
        if all(v == 0 or v == e for (_, v), (_, e) in zip(flipped.items, eps.items)):
            return flipped
    bad = next(k for (k, v), (_, e) in zip(s.items, eps.items) if v != 0 and v != e)
    raise OutsideClosureError(f"sign at cone {list(bad)} is opposite to the base sign")


def classify(h: Calibration, D: CombinatorialType, h0: Calibration) -> Stratum:
    eps = det_signs(h0, D)
    if eps.has_zero():
        raise PreconditionError("base calibration must lie in U(D)")
    return _classify(h, D, eps)


def _classify(h: Calibration, D: CombinatorialType, eps: SignVector) -> Stratum:
    s = _oriented_signs(h, D, eps)
    Dp = degenerate_type(h, D)
    removed = tuple(c for c in D.cones if c not in Dp.family)
    return Stratum(s, Dp, h, removed)


def stratum_code(stratum: Stratum, order: Sequence[Sequence[int]]) -> int:
    """Binary index: bit k (most significant first) is 1 iff ``order[k]`` is nonzero."""
    code = 0
    for c in order:
        code = 2 * code + (stratum.sign_vector[tuple(c)] != 0)
    return code


# --------------------------------------------------------------------------
# sampling scan
# --------------------------------------------------------------------------

def _rand_rational(rng: random.Random, bound: int = 3, maxden: int = 7) -> Fraction:
    q = rng.randint(1, maxden)
    return Fraction(rng.randint(-bound * q, bound * q), q)


def _solve_det_zero(h: Calibration, cone, var: int) -> Calibration | None:
    """Set chart coordinate ``var`` so that det(cone) = 0, if the det depends on it.

    Determinants are affine in any single coordinate, so two evaluations fix
    the line.
    """
    coords = list(h.coordinates())
    c0 = list(coords)
    c0[var] = Fraction(0)
    c1 = list(coords)
    c1[var] = Fraction(1)
    f0 = cone_det(h.with_coordinates(c0), cone)
    f1 = cone_det(h.with_coordinates(c1), cone)
    slope = f1 - f0
    if slope == 0:
        return None
    coords[var] = -f0 / slope
    return h.with_coordinates(coords)


def sample_points(D: CombinatorialType, base: Calibration, samples: int, seed: int) -> list[Calibration]:
    """Deterministic sample of chart points: grid, jittered grid, zero loci.

    About a third of the budget goes to each family.  The integer grid
    {-2..2}^m is used in full when it fits, otherwise grid points are drawn
    at random.  Zero-locus points start from a random point and solve one or
    more determinants for a coordinate of one of their free columns.
    """
    rng = random.Random(seed)
    m = len(base.coordinates())
    cones = _top_cones(D)
    free_index = {i: k for k, i in enumerate(base.free_columns())}
    pts: list[Calibration] = []
    n_grid = samples // 3
    values = [-2, -1, 0, 1, 2]
    if 5**m <= n_grid:
        for p in product(values, repeat=m):
            pts.append(base.with_coordinates(p))
    else:
        for _ in range(n_grid):
            pts.append(base.with_coordinates([rng.choice(values) for _ in range(m)]))
    n_jit = (samples - len(pts)) // 2
    for _ in range(n_jit):
        p = [Fraction(rng.choice(values)) for _ in range(m)]
        for j in range(m):
            if rng.random() < 0.5:
                p[j] += _rand_rational(rng, 1, 9) / 2
        pts.append(base.with_coordinates(p))
    while len(pts) < samples:
        h = base.with_coordinates([_rand_rational(rng) for _ in range(m)])
        order = list(cones)
        rng.shuffle(order)
        for c in order[: rng.randint(1, len(order))]:
            vars_ = [free_index[i] * base.d + r for i in c if i in free_index for r in range(base.d)]
            if not vars_:
                continue
            sol = _solve_det_zero(h, c, rng.choice(vars_))
            if sol is not None:
                h = sol
        pts.append(h)
    return pts[:samples]


def _classify_chunk(args):
    D, eps, pts = args
    out = []
    for h in pts:
        try:
            out.append(_classify(h, D, eps))
        except OutsideClosureError:
            out.append(None)
    return out


def strata_scan(
    D: CombinatorialType,
    h0: Calibration,
    chart: Sequence[int] | None = None,
    samples: int = 10_000,
    seed: int = 0,
    workers: int | None = None,
) -> list[Stratum]:
    """Observed strata of the closed chart, one exact witness each.

    ``chart`` is the d-subset of identity columns (default the standard
    chart).  Strata are keyed by oriented sign vector; the first witness in
    sample order wins.  Completeness is not guaranteed.
    """
    require_valid(D)
    chart = tuple(chart) if chart else tuple(range(1, D.d + 1))
    base = h0.in_chart(chart)
    eps = det_signs(h0, D)
    if eps.has_zero():
        raise PreconditionError("base calibration must lie in U(D)")
    pts = sample_points(D, base, samples, seed)
    workers = workers if workers is not None else int(os.environ.get("FANMODULI_THREADS", "1") or 1)
    if workers > 1 and len(pts) > 1000:
        size = -(-len(pts) // workers)
        chunks = [(D, eps, pts[i:i + size]) for i in range(0, len(pts), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = [s for part in ex.map(_classify_chunk, chunks) for s in part]
    else:
        results = _classify_chunk((D, eps, pts))
    seen: dict = {}
    for s in results:
        if s is not None and s.sign_vector not in seen:
            seen[s.sign_vector] = s
    return sorted(seen.values(), key=lambda s: (len(s.zero_cones), s.sign_vector.items))


# --------------------------------------------------------------------------
# rank-one projection of a negatively collinear pair (d = 2)
# --------------------------------------------------------------------------

def rational_gcd(values: Sequence[Fraction]) -> Fraction:
    """Positive generator of the subgroup of Q generated by ``values``."""
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    g = 0
    for v in vals:
        g = gcd(g, int(v * lcm))
    return Fraction(g, lcm)


def projected_calibration(h: Calibration, i: int, j: int) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Generator alpha of the projected value group and the projected row.

    ``w`` is the clockwise quarter turn of ``h(e_i)``; the row is
    ``<w, h(e_k)> / alpha`` for every generator k.
    """
    if h.d != 2:
        raise PreconditionError("projection is defined for d = 2")
    u, v = h.column(i), h.column(j)
    if rank(h.columns([i, j])) != 1 or all(x == 0 for x in u) or all(x == 0 for x in v):
        raise PreconditionError("h(e_i), h(e_j) must be nonzero and proportional")
    if u[0] * v[0] + u[1] * v[1] >= 0:
        raise PreconditionError("h(e_i), h(e_j) must point in opposite directions")
    w = (u[1], -u[0])
    pair = [w[0] * x + w[1] * y for x, y in (h.column(k) for k in range(1, h.n + 1))]
    alpha = rational_gcd([pair[k - 1] for k in range(1, h.n + 1) if k not in (i, j)])
    if alpha == 0:
        raise PreconditionError("projected value group is trivial")
    return alpha, tuple(x / alpha for x in pair)


def sign_of(x) -> int:
    return sign(x)
