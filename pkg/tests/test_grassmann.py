import random
from itertools import combinations

import pytest

from fanmoduli.combinatorics import CombinatorialType, simplex_type
from fanmoduli.exact import PreconditionError, RationalMatrix
from fanmoduli.grassmann import (
    chart_normalize,
    closure_conditions,
    complement,
    gale,
    in_closure,
    plucker,
    plucker_from_dict,
    plucker_relations,
    three_term_relation,
    transition,
)
from fanmoduli.moduli import Calibration, simplex_reference

from conftest import rand_q


def col(*v):
    return RationalMatrix.from_columns([v])


def test_gale_examples(h_p2):
    assert gale(h_p2) == col(1, 1, 1)
    assert gale(Calibration.from_columns([[1, 0], [0, 1], [0, 0]])) == col(0, 0, 1)


def test_chart_normalize_examples(h_f0):
    assert chart_normalize(col(2, 2, 2), [3]).k == col(1, 1, 1)
    s = chart_normalize(gale(h_f0), [3, 4])
    assert s.k.select_rows([2, 3]) == RationalMatrix.identity(2)
    assert s.k.select_rows([0, 1]) == RationalMatrix([[1, 0], [0, 1]])
    assert s.transverse == (1, 2)
    with pytest.raises(PreconditionError):
        chart_normalize(RationalMatrix.from_columns([[1, 0, 0], [1, 0, 0]]), [2, 3])


def test_transition_examples(h_f0):
    k = gale(h_f0)
    assert transition(k, (3, 4), (3, 4)) == RationalMatrix.identity(2)
    K = transition(k, (3, 4), (1, 2))
    sI = chart_normalize(k, (3, 4)).k
    sJ = chart_normalize(k, (1, 2)).k
    assert K == sI.select_rows([0, 1])
    assert sJ @ K == sI


def test_transition_cocycle_random():
    rng = random.Random(11)
    checked = 0
    while checked < 300:
        n = rng.randint(3, 6)
        r = rng.randint(1, n - 1)
        k = RationalMatrix([[rand_q(rng) for _ in range(r)] for _ in range(n)])
        I, J, L = (tuple(sorted(rng.sample(range(1, n + 1), r))) for _ in range(3))
        try:
            lhs = transition(k, L, I)
            rhs = transition(k, J, I) @ transition(k, L, J)
        except PreconditionError:
            continue
        assert lhs == rhs
        checked += 1


def test_plucker_examples(h_f0):
    assert plucker(col(0, 0, 1)).values() == [0, 0, 1]
    assert plucker(col(1, 1, 1)).values() == [1, 1, 1]
    p = plucker(gale(h_f0))
    assert p.as_dict() == {(1, 2): 1, (1, 3): 0, (1, 4): 1, (2, 3): -1, (2, 4): 0, (3, 4): 1}
    assert three_term_relation(p) == 0


def test_plucker_is_projective_and_satisfies_relations():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(4, 6)
        r = rng.randint(2, n - 2)
        k = RationalMatrix([[rand_q(rng) for _ in range(r)] for _ in range(n)])
        try:
            p = plucker(k)
        except PreconditionError:
            continue
        B = RationalMatrix([[rand_q(rng) for _ in range(r)] for _ in range(r)])
        try:
            assert plucker(k @ B) == p
        except PreconditionError:
            pass
        assert all(x == 0 for x in plucker_relations(p))


def test_closure_conditions_c4(c4, h_f0):
    conds = closure_conditions(c4, h_f0)
    assert len(conds) == 6
    coords = {"".join(map(str, complement(c, 4))) for q in conds for c in (q.I, q.J)}
    assert coords == {"34", "14", "12", "23"}
    assert in_closure(plucker(gale(h_f0)), conds)


def test_closure_single_cone_is_vacuous():
    h0 = Calibration.from_columns([[1, 0], [0, 1], [1, 1]])
    D = CombinatorialType(2, 3, [[1], [2], [1, 2]], virtual=[3])
    conds = closure_conditions(D, h0)
    assert len(conds) == 1 and conds[0].I == conds[0].J and conds[0].sign == 1


def test_closure_simplex_examples():
    D, h0 = simplex_type(2), simplex_reference(2)
    conds = closure_conditions(D, h0)
    assert len(conds) == 3
    assert in_closure(plucker_from_dict(3, 1, {(1,): 1, (2,): 0, (3,): 0}), conds)
    assert not in_closure(plucker_from_dict(3, 1, {(1,): 1, (2,): -1, (3,): 1}), conds)


def test_plucker_from_dict_rejects_missing():
    with pytest.raises(ValueError):
        plucker_from_dict(3, 1, {(1,): 1})
    with pytest.raises(ValueError):
        plucker_from_dict(3, 1, {(1,): 0, (2,): 0, (3,): 0})


def test_complement():
    assert complement((1, 3), 4) == (2, 4)
    assert all(complement(complement(S, 5), 5) == S for S in combinations(range(1, 6), 2))
