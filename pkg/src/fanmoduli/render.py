"""SVG drawing of a 2-dimensional calibrated fan.

Everything is decided with exact rationals; only the final coordinates are
printed as decimals, rounded to six places.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import CombinatorialType
from .degeneration import degenerate_type
from .exact import primitive
from .moduli import Calibration, UnsupportedTypeError

CANVAS = 1000
CENTER = Fraction(CANVAS, 2)
REACH = Fraction(380)  # max-norm length of a drawn ray, in canvas units


@dataclass(frozen=True)
class Scene:
    rays: tuple  # ((label, (x, y)), ...) with exact nonzero directions
    sectors: tuple  # ((cone label, (i, j)), ...)
    canvas: int = CANVAS

    def __post_init__(self):
        labels = {lab for lab, _ in self.rays}
        for _, v in self.rays:
            if v[0] == 0 and v[1] == 0:
                raise ValueError("ray directions must be nonzero")
        for _, (i, j) in self.sectors:
            if i not in labels or j not in labels:
                raise ValueError("sector uses a ray that is not drawn")


def scene(h: Calibration, D: CombinatorialType) -> Scene:
    if h.d != 2 or D.d != 2:
        raise UnsupportedTypeError("rendering is only defined for d = 2")
    Dp = degenerate_type(h, D)
    rays = tuple((i, h.column(i)) for i in Dp.rays)
    sectors = tuple(("".join(map(str, c)), c) for c in Dp.cones if len(c) == 2)
    return Scene(rays, sectors)


def _dec(x: Fraction) -> str:
    q = Fraction(round(x * 10**6), 10**6)
    neg = q < 0
    q = abs(q)
    whole, frac = divmod(q.numerator, q.denominator)
    digits = f"{whole}.{frac * 10**6 // q.denominator:06d}"
    return ("-" if neg and q else "") + digits


def _tip(v, reach: Fraction = REACH) -> tuple[Fraction, Fraction]:
    s = reach / max(abs(v[0]), abs(v[1]))
    return CENTER + s * v[0], CENTER - s * v[1]


def to_svg(sc: Scene) -> str:
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{sc.canvas}" height="{sc.canvas}" '
        f'viewBox="0 0 {sc.canvas} {sc.canvas}">',
        f'<rect x="0" y="0" width="{sc.canvas}" height="{sc.canvas}" fill="white"/>',
    ]
    dirs = dict(sc.rays)
    for label, (i, j) in sc.sectors:
        (x1, y1), (x2, y2) = _tip(dirs[i]), _tip(dirs[j])
        pts = " ".join(f"{_dec(x)},{_dec(y)}" for x, y in ((CENTER, CENTER), (x1, y1), (x2, y2)))
        out.append(f'<polygon class="cone" data-cone="{label}" points="{pts}" fill="#9ecae1" fill-opacity="0.5" stroke="none"/>')
    stacked: dict = {}
    for label, v in sc.rays:
        x, y = _tip(v)
        out.append(
            f'<line class="ray" data-ray="{label}" x1="{_dec(CENTER)}" y1="{_dec(CENTER)}" '
            f'x2="{_dec(x)}" y2="{_dec(y)}" stroke="black" stroke-width="2"/>'
        )
        # collinear rays share a tip; push later labels outward
        k = stacked.setdefault(primitive(v), 0)
        stacked[primitive(v)] = k + 1
        lx, ly = _tip(v, REACH + 40 + 30 * k)
        out.append(
            f'<text class="label" x="{_dec(lx)}" y="{_dec(ly)}" font-size="24" '
            f'text-anchor="middle" dominant-baseline="middle">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(h: Calibration, D: CombinatorialType) -> str:
    return to_svg(scene(h, D))
