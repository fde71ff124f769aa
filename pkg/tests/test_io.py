from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanmoduli import io
from fanmoduli.combinatorics import cycle_type, simplex_type
from fanmoduli.degeneration import classify
from fanmoduli.grassmann import gale, plucker
from fanmoduli.moduli import component_inequalities, det_signs
from fanmoduli.symmetry import group_elements

from conftest import cal, rationals


def roundtrip(obj):
    return io.loads(io.dumps(obj))


@given(rationals)
def test_rational_roundtrip(x):
    assert io.parse_rational(roundtrip(io.rational_to_json(x))) == x


def test_rational_format():
    assert io.rational_to_json(Fraction(3)) == "3"
    assert io.rational_to_json(Fraction(-2, 4)) == "-1/2"
    assert io.parse_rational(" -4 / 6 ") == Fraction(-2, 3)
    for bad in ["1.5", "4/-6", "1/0", "x", None, [], 1.5, True]:
        with pytest.raises(io.FormatError):
            io.parse_rational(bad)


@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_matrix_and_calibration_roundtrip(d, extra, data):
    cols = data.draw(st.lists(st.lists(rationals, min_size=d, max_size=d), min_size=extra, max_size=extra))
    h = cal(*cols, d=d)
    assert io.parse_calibration(roundtrip(io.calibration_to_json(h))) == h
    assert io.parse_matrix(roundtrip(io.matrix_to_json(h.matrix))) == h.matrix


def test_calibration_schema():
    h = cal((-1, -1))
    assert io.calibration_to_json(h) == {"d": 2, "n": 3, "columns": [["1", "0"], ["0", "1"], ["-1", "-1"]]}
    with pytest.raises(ValueError):
        io.parse_calibration({"d": 2, "n": 3, "columns": [["1", "1"], ["0", "1"], ["-1", "-1"]]})
    with pytest.raises(io.FormatError):
        io.parse_calibration({"d": 3, "columns": [["1", "0"], ["0", "1"]]})
    g = h.in_chart((2, 3))
    assert io.parse_calibration(roundtrip(io.calibration_to_json(g))) == g


@given(st.integers(3, 8), st.sets(st.integers(1, 8), max_size=3))
def test_type_roundtrip(n, drop):
    D = cycle_type(n)
    E = D.with_cones([c for c in D.cones if not (len(c) == 2 and c[0] in drop)])
    assert io.parse_type(roundtrip(io.type_to_json(E))) == E


def test_type_schema():
    js = io.type_to_json(cycle_type(4))
    assert js == {"d": 2, "n": 4, "cones": [[1], [1, 2], [1, 4], [2], [2, 3], [3], [3, 4], [4]], "virtual": []}
    D = io.parse_type({"d": 2, "n": 4, "cones": [[1], [2], [3], [4], [1, 2], [2, 3], [3, 4], [4, 1]], "virtual": []})
    assert D == cycle_type(4)
    for bad in [[], {"d": 2}, {"d": "2", "n": 3, "cones": []}, {"d": 2, "n": 3, "cones": [[1, 1]]}, {"d": 2, "n": 3, "cones": [["a"]]}]:
        with pytest.raises(io.FormatError):
            io.parse_type(bad)


@pytest.mark.parametrize("D", [simplex_type(2), cycle_type(5)])
def test_group_element_roundtrip(D):
    for g in group_elements(D):
        back = io.parse_group_element(roundtrip(io.group_element_to_json(g)), D)
        assert back == g
    g = group_elements(D)[1]
    assert set(io.group_element_to_json(g)) == {"tau", "sigma", "alpha", "A"}


def test_plucker_signs_stratum_inequalities(c4, h_f0):
    p = plucker(gale(h_f0))
    js = io.plucker_to_json(p)
    assert js == {"rank": 2, "n": 4, "coords": {"12": "1", "13": "0", "14": "1", "23": "-1", "24": "0", "34": "1"}}
    assert io.parse_plucker(roundtrip(js)) == p
    s = det_signs(h_f0, c4)
    assert io.parse_signs(roundtrip(io.signs_to_json(s))) == s
    qs = component_inequalities(c4, h_f0)
    assert io.parse_inequalities(roundtrip(io.inequalities_to_json(qs))) == qs
    st_ = classify(cal((0, 0), (1, -1)), c4, h_f0)
    js = io.stratum_to_json(st_)
    assert js["signs"] == {"12": 1, "14": -1, "23": 0, "34": 0}
    assert js["removed_cones"] == [[3], [2, 3], [3, 4]]
    assert io.parse_calibration(js["witness"]) == st_.witness


def test_wide_index_keys():
    from fanmoduli.moduli import SignVector

    s = SignVector.from_dict({(9, 10): 1, (1, 10): -1})
    js = io.signs_to_json(s)
    assert js == {"1,10": -1, "9,10": 1}
    assert io.parse_signs(js) == s


def test_dumps_is_stable():
    assert io.dumps({"b": 1, "a": [1, 2]}) == io.dumps({"a": [1, 2], "b": 1})
    with pytest.raises(io.FormatError):
        io.loads("{")
