import re

import pytest

from fanmoduli.combinatorics import cycle_type, simplex_type
from fanmoduli.moduli import UnsupportedTypeError, simplex_reference
from fanmoduli.render import Scene, render, scene

from conftest import cal


def counts(svg):
    return len(re.findall(r'class="ray"', svg)), len(re.findall(r'class="cone"', svg))


def test_p2_reference():
    svg = render(simplex_reference(2), simplex_type(2))
    assert counts(svg) == (3, 3)
    assert svg.startswith("<svg") and svg.endswith("</svg>\n")


def test_same_direction_collapse_keeps_collinear_rays(c4):
    h = cal((-2, -2), (-1, -1))
    sc = scene(h, c4)
    assert len(sc.rays) == 4 and len(sc.sectors) == 3
    svg = render(h, c4)
    tip3 = re.search(r'data-ray="3".*?x2="([^"]+)" y2="([^"]+)"', svg).groups()
    tip4 = re.search(r'data-ray="4".*?x2="([^"]+)" y2="([^"]+)"', svg).groups()
    assert tip3 == tip4


def test_vanishing_ray_is_omitted(c4):
    svg = render(cal((0, 0), (-1, -1)), c4)
    assert counts(svg) == (3, 2)
    assert 'data-ray="3"' not in svg


def test_render_is_byte_deterministic(c4, h_f0):
    assert render(h_f0, c4) == render(h_f0, c4)
    h = cal(("1/3", "-2/7"), (-1, "1/9"))
    assert render(h, cycle_type(4)) == render(h, cycle_type(4))
    # tip of (1/3, -2/7) at max-norm 380 around the centre (500, 500)
    assert 'x2="880.000000" y2="825.714286"' in render(h, cycle_type(4))


def test_six_digit_coordinates(c4):
    svg = render(cal((-3, 1), (-1, -7)), c4)
    for num in re.findall(r'(?:x1|y1|x2|y2)="([^"]+)"', svg):
        assert re.fullmatch(r"-?\d+\.\d{6}", num)


def test_render_requires_d2():
    with pytest.raises(UnsupportedTypeError):
        render(simplex_reference(3), simplex_type(3))


def test_scene_invariants():
    with pytest.raises(ValueError):
        Scene(((1, (0, 0)),), ())
    with pytest.raises(ValueError):
        Scene(((1, (1, 0)),), (("12", (1, 2)),))
