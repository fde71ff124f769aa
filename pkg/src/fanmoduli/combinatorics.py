"""Combinatorial types of simplicial fans as downward-closed set families.

A type is stored as the family of generator-index subsets (1-based) that
span cones.  For simplicial fans downward closure already encodes both the
face and the intersection axioms, so a family is a valid type exactly when
it is downward closed, contains the empty set and has a member of full
cardinality ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Iterator

Cone = tuple  # sorted tuple of 1-based generator indices


def _cone(c: Iterable[int]) -> Cone:
    return tuple(sorted(set(int(i) for i in c)))


def _subsets(c: Cone) -> Iterator[Cone]:
    for r in range(len(c) + 1):
        yield from combinations(c, r)


@dataclass(frozen=True)
class CombinatorialType:
    d: int
    n: int
    cones: tuple  # tuple[Cone, ...], sorted, always containing ()
    virtual: tuple = ()
    complete: bool | None = field(default=None, compare=False)  # user assertion for d > 2

    def __init__(self, d, n, cones, virtual=(), complete=None):
        fam = {_cone(c) for c in cones}
        fam.add(())
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "cones", tuple(sorted(fam, key=lambda c: (len(c), c))))
        object.__setattr__(self, "virtual", _cone(virtual))
        object.__setattr__(self, "complete", complete)

    @property
    def family(self) -> frozenset:
        return frozenset(self.cones)

    def __contains__(self, cone) -> bool:
        return _cone(cone) in self.family

    @property
    def rays(self) -> tuple[int, ...]:
        return tuple(sorted(c[0] for c in self.cones if len(c) == 1))

    @property
    def free(self) -> tuple[int, ...]:
        """Indices that are neither rays nor virtual (the set J)."""
        used = set(self.rays) | set(self.virtual)
        return tuple(i for i in range(1, self.n + 1) if i not in used)

    @property
    def max_cardinality(self) -> int:
        return max(len(c) for c in self.cones)

    @property
    def maximal_cones(self) -> tuple[Cone, ...]:
        """Inclusion-maximal members, in lexicographic order."""
        fam = self.family
        out = []
        for c in self.cones:
            if not c:
                continue
            if any(_cone(c + (i,)) in fam for i in range(1, self.n + 1) if i not in c):
                continue
            out.append(c)
        return tuple(sorted(out))

    def sorted_cones(self) -> list[Cone]:
        """Nonempty members, sorted lexicographically (the JSON order)."""
        return sorted(c for c in self.cones if c)

    def with_cones(self, cones) -> "CombinatorialType":
        return CombinatorialType(self.d, self.n, cones, self.virtual, self.complete)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    message: str = ""

    def to_json(self) -> dict:
        return {"error": self.axiom, "witness": list(self.witness), "message": self.message}


class InvalidTypeError(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(f"{violation.axiom}: {violation.message} (witness {list(violation.witness)})")
        self.violation = violation


def validate(D: CombinatorialType) -> Violation | None:
    """Return the first violated axiom with a witness, or None if D is valid."""
    fam = D.family
    for c in D.cones:
        if any(i < 1 or i > D.n for i in c):
            return Violation("index_range", c, f"indices must lie in [1,{D.n}]")
    for v in D.virtual:
        if v < 1 or v > D.n:
            return Violation("index_range", (v,), f"virtual index outside [1,{D.n}]")
    for c in D.cones:
        missing = [c[:k] + c[k + 1:] for k in range(len(c)) if c[:k] + c[k + 1:] not in fam]
        if missing:
            return Violation("downward_closure", min(missing), f"face of {list(c)} is missing")
    clash = sorted(set(D.rays) & set(D.virtual))
    if clash:
        return Violation("virtual_ray_overlap", (clash[0],), "a virtual generator is also a ray")
    if D.max_cardinality > D.d:
        big = next(c for c in D.cones if len(c) > D.d)
        return Violation("cardinality", big, f"cone has more than d={D.d} generators")
    if D.max_cardinality < D.d:
        return Violation("no_full_cone", (), f"no cone with exactly d={D.d} generators")
    return None


def require_valid(D: CombinatorialType) -> None:
    v = validate(D)
    if v is not None:
        raise InvalidTypeError(v)


def is_maximal_type(D: CombinatorialType) -> bool:
    require_valid(D)
    return not D.free


def is_complete(D: CombinatorialType) -> bool:
    """Completeness of the fan.

    Decided combinatorially in dimension 2 (every ray bounds exactly two
    2-cones and they form a single cycle, which for an admissible
    calibration means the sectors wind once around the origin).  In higher
    dimension the ``complete`` flag carried by D is returned as is.
    """
    if D.d != 2:
        return bool(D.complete)
    two = [c for c in D.cones if len(c) == 2]
    rays = D.rays
    if len(two) < 3 or any(sum(r in c for c in two) != 2 for r in rays):
        return False
    adj: dict[int, list[int]] = {r: [] for r in rays}
    for a, b in two:
        adj[a].append(b)
        adj[b].append(a)
    seen = {rays[0]}
    stack = [rays[0]]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(rays)


# --------------------------------------------------------------------------
# automorphisms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RayPermutation:
    """A bijection of ``domain`` given by one-line images in ascending order."""

    domain: tuple
    images: tuple

    def __post_init__(self):
        if sorted(self.images) != sorted(self.domain) or len(set(self.domain)) != len(self.domain):
            raise ValueError("not a permutation of its domain")

    @classmethod
    def identity(cls, domain) -> "RayPermutation":
        dom = tuple(sorted(domain))
        return cls(dom, dom)

    @classmethod
    def from_mapping(cls, mapping: dict) -> "RayPermutation":
        dom = tuple(sorted(mapping))
        return cls(dom, tuple(mapping[i] for i in dom))

    def as_dict(self) -> dict:
        return dict(zip(self.domain, self.images))

    def __call__(self, i: int) -> int:
        return self.as_dict().get(i, i)

    def image(self, cone) -> Cone:
        m = self.as_dict()
        return _cone(m.get(i, i) for i in cone)

    def compose(self, other: "RayPermutation") -> "RayPermutation":
        """``self o other`` (apply ``other`` first)."""
        a, b = self.as_dict(), other.as_dict()
        return RayPermutation.from_mapping({i: a.get(b[i], b[i]) for i in b})

    def inverse(self) -> "RayPermutation":
        return RayPermutation.from_mapping({v: k for k, v in self.as_dict().items()})

    def is_identity(self) -> bool:
        return self.domain == self.images

    def preserves(self, D: CombinatorialType) -> bool:
        fam = D.family
        return all(self.image(c) in fam for c in D.cones)


def automorphism_group(D: CombinatorialType) -> list[RayPermutation]:
    """All ray bijections mapping the cone family onto itself.

    Backtracking over ray images; candidates must share the ray degree
    (number of maximal cones through the ray) and every cone whose rays are
    all assigned must land in the family.  The identity comes first.
    """
    require_valid(D)
    rays = D.rays
    fam = D.family
    maxc = D.maximal_cones
    degree = {r: sum(r in c for c in maxc) for r in rays}
    order = sorted(rays, key=lambda r: (-degree[r], r))
    cones_by_last: dict[int, list[Cone]] = {r: [] for r in rays}
    pos = {r: k for k, r in enumerate(order)}
    for c in D.cones:
        if len(c) >= 2:
            cones_by_last[max(c, key=lambda r: pos[r])].append(c)

    result: list[RayPermutation] = []
    assign: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> None:
        if k == len(order):
            result.append(RayPermutation.from_mapping(assign))
            return
        r = order[k]
        for t in rays:
            if t in used or degree[t] != degree[r]:
                continue
            assign[r] = t
            if all(_cone(assign[i] for i in c) in fam for c in cones_by_last[r]):
                used.add(t)
                extend(k + 1)
                used.discard(t)
            del assign[r]

    extend(0)
    result.sort(key=lambda p: (not p.is_identity(), p.images))
    return result


def virtual_permutations(D: CombinatorialType) -> list[RayPermutation]:
    return [RayPermutation(D.virtual, p) for p in permutations(D.virtual)]


# --------------------------------------------------------------------------
# degenerations
# --------------------------------------------------------------------------

def enumerate_degenerations(D: CombinatorialType) -> list[CombinatorialType]:
    """Proper downward-closed subfamilies with the same rays and top cardinality.

    Members of cardinality >= 2 are decided in order of increasing size; a
    member may only be kept when all its facets were kept, so every branch
    is downward closed by construction.
    """
    require_valid(D)
    base = [c for c in D.cones if len(c) <= 1]
    higher = [c for c in D.cones if len(c) >= 2]
    top = D.max_cardinality
    out: list[CombinatorialType] = []
    kept: set = set(base)

    def walk(k: int) -> None:
        if k == len(higher):
            if len(kept) == len(D.cones):
                return
            if max(len(c) for c in kept) != top:
                return
            out.append(D.with_cones(kept))
            return
        c = higher[k]
        walk(k + 1)
        if all(c[:i] + c[i + 1:] in kept for i in range(len(c))):
            kept.add(c)
            walk(k + 1)
            kept.discard(c)

    walk(0)
    out.sort(key=lambda t: (-len(t.cones), t.sorted_cones()))
    return out


def is_degeneration_of(Dp: CombinatorialType, D: CombinatorialType) -> bool:
    """Check the degenerated-type axioms for ``Dp`` relative to ``D``."""
    fam, sub = D.family, Dp.family
    if not sub <= fam or Dp.rays != D.rays:
        return False
    if Dp.max_cardinality != D.max_cardinality:
        return False
    for s in sub:
        if any(f not in sub for f in _subsets(s)):
            return False
        for t in sub:
            if _cone(set(s) & set(t)) not in sub:
                return False
    return True


# --------------------------------------------------------------------------
# named types
# --------------------------------------------------------------------------

def simplex_type(d: int) -> CombinatorialType:
    """S_d: all proper subsets of [1, d+1] (the type of projective d-space)."""
    full = range(1, d + 2)
    cones = [c for r in range(d + 1) for c in combinations(full, r)]
    return CombinatorialType(d, d + 1, cones, complete=True)


def cycle_type(n: int) -> CombinatorialType:
    """C_n: n rays in the plane, consecutive pairs (cyclically) span 2-cones."""
    cones = [(i,) for i in range(1, n + 1)] + [(i, i % n + 1) for i in range(1, n + 1)]
    return CombinatorialType(2, n, cones, complete=True)


def full_cone_type(d: int) -> CombinatorialType:
    """The powerset of [1, d]: a single maximal cone."""
    return CombinatorialType(d, d, [c for r in range(d + 1) for c in combinations(range(1, d + 1), r)])


def join(D1: CombinatorialType, D2: CombinatorialType, labels1=None, labels2=None) -> CombinatorialType:
    """Product fan type: cones are unions of a cone of each factor.

    ``labels1``/``labels2`` map each factor's indices to global ones; by
    default the second factor is shifted past the first.
    """
    labels1 = labels1 or {i: i for i in range(1, D1.n + 1)}
    labels2 = labels2 or {i: i + D1.n for i in range(1, D2.n + 1)}
    cones = [
        tuple(labels1[i] for i in a) + tuple(labels2[j] for j in b)
        for a in D1.cones
        for b in D2.cones
    ]
    complete = bool(is_complete(D1) and is_complete(D2))
    return CombinatorialType(D1.d + D2.d, D1.n + D2.n, cones, complete=complete)


def relabel(D: CombinatorialType, mapping: dict) -> CombinatorialType:
    m = lambda i: mapping.get(i, i)  # noqa: E731
    return CombinatorialType(
        D.d, D.n, [[m(i) for i in c] for c in D.cones], [m(i) for i in D.virtual], D.complete
    )


def product_p1_p2(chart_labels: bool = True) -> CombinatorialType:
    """Type of P^1 x P^2 (n=5, d=3).

    With ``chart_labels`` the factors are labelled {1,4} and {2,3,5} so that
    {1,2,3} is a maximal cone and the standard chart applies; otherwise the
    factor-by-factor labelling {1,2} x {3,4,5} is used.
    """
    if chart_labels:
        return join(simplex_type(1), simplex_type(2), {1: 1, 2: 4}, {1: 2, 2: 3, 3: 5})
    return join(simplex_type(1), simplex_type(2))
