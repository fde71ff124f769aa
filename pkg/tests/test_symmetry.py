import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanmoduli.combinatorics import CombinatorialType, RayPermutation, cycle_type, simplex_type
from fanmoduli.exact import PreconditionError, RationalMatrix, rank
from fanmoduli.grassmann import chart_normalize, gale
from fanmoduli.moduli import UnsupportedTypeError, is_admissible
from fanmoduli.symmetry import (
    GroupElement,
    act,
    action_cocycle,
    canonical_form,
    grassmann_act,
    group_elements,
    identity_element,
    isomorphic,
    orbit,
)

from conftest import cal


def perm(mapping, D):
    full = {r: mapping.get(r, r) for r in D.rays}
    return GroupElement(RayPermutation.from_mapping(full), RayPermutation.identity(D.virtual))


def same_span(a: RationalMatrix, b: RationalMatrix) -> bool:
    both = RationalMatrix.from_columns(a.to_columns() + b.to_columns())
    return rank(a) == rank(b) == rank(both)


def test_act_examples(s2):
    swap = perm({1: 2, 2: 1}, s2)
    assert act(swap, cal((-1, -1)), s2) == cal((-1, -1))
    assert act(swap, cal((-1, -2)), s2) == cal((-2, -1))
    h = cal((-3, -1))
    assert act(identity_element(s2), h, s2) == h


def test_orbits_and_canonical_forms(s2):
    assert orbit(cal((-1, -1)), s2) == [cal((-1, -1))]
    orb = orbit(cal((-1, -2)), s2)
    assert cal((-1, -2)) in orb and cal((-2, -1)) in orb
    # the third image comes from the 3-cycles: the balanced point (-1/2, -1/2)
    assert len(orb) == 3
    assert canonical_form(cal((-2, -1)), s2) == cal((-2, -1))
    assert canonical_form(cal((-1, -2)), s2) == cal((-2, -1))
    assert canonical_form(cal((-1, -1)), s2) == cal((-1, -1))


def test_isomorphic_examples(s2):
    h = cal((-1, -2))
    ok, g = isomorphic(h, h, s2)
    assert ok and g.is_identity()
    ok, g = isomorphic(h, cal((-2, -1)), s2)
    assert ok and act(g, h, s2) == cal((-2, -1))
    assert g.tau.as_dict() == {1: 2, 2: 1, 3: 3}
    assert isomorphic(cal((-1, -1)), h, s2) == (False, None)


def test_group_requires_maximal_type():
    D = CombinatorialType(2, 4, simplex_type(2).cones)
    with pytest.raises(UnsupportedTypeError):
        group_elements(D)


def test_act_rejects_non_cone_target(c4, h_f0):
    # (2 3) is not an automorphism and pulls [1,2] back to {1,3}, which is not a cone
    bad = GroupElement(RayPermutation.from_mapping({1: 1, 2: 3, 3: 2, 4: 4}), RayPermutation.identity(()))
    with pytest.raises(PreconditionError):
        act(bad, h_f0, c4)


def test_grassmann_act_examples(s2, c4, h_f0):
    k = RationalMatrix.from_columns([[1, 1, 1]])
    assert grassmann_act(identity_element(s2), k, s2) == k
    for g in group_elements(s2):
        assert grassmann_act(g, k, s2) == k
    g = perm({1: 3, 3: 1, 2: 4, 4: 2}, c4)
    k = gale(h_f0)
    moved = grassmann_act(g, k, c4)
    assert moved.select_rows([2, 3, 0, 1]) == k
    assert same_span(moved, gale(act(g, h_f0, c4)))


def test_cocycle_identity_and_explicit_value(c4, h_f0):
    k = gale(h_f0)
    assert action_cocycle(identity_element(c4), k, (3, 4), c4) == RationalMatrix.identity(2)
    g = perm({1: 3, 3: 1, 2: 4, 4: 2}, c4)
    K = action_cocycle(g, k, (3, 4), c4)
    # oracle: s_I(g.[k]) K == g . s_I([k]), both sides normalised independently
    left = chart_normalize(grassmann_act(g, k, c4), (3, 4)).k
    right = grassmann_act(g, chart_normalize(k, (3, 4)).k, c4)
    assert left @ K == right
    assert K == RationalMatrix([[1, 0], [0, 1]])


@pytest.mark.parametrize("D", [simplex_type(2), cycle_type(4), cycle_type(5)])
def test_action_is_a_left_action(D):
    from fanmoduli.moduli import reference_calibration

    h = reference_calibration(D)
    G = group_elements(D)
    images = set(orbit(h, D))
    rng = random.Random(3)
    for _ in range(40):
        a, b = rng.choice(G), rng.choice(G)
        ab = a.compose(b)
        assert act(ab, h, D) == act(a, act(b, h, D), D)
        assert act(a, h, D) in images
        assert is_admissible(act(a, h, D), D)


@given(st.fractions(max_value=-1, min_value=-9, max_denominator=5), st.fractions(max_value=-1, min_value=-9, max_denominator=5))
def test_kernel_equivariance_s2(x, y):
    D = simplex_type(2)
    h = cal((x, y))
    for g in group_elements(D):
        assert same_span(gale(act(g, h, D)), grassmann_act(g, gale(h), D))
