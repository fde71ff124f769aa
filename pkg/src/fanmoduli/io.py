"""JSON encoding of the domain types.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1) and matrices are
lists of columns.  Every ``parse_*`` raises :class:`FormatError` on input
that does not have the expected shape; domain checks (identity prefix,
axioms) raise their own errors further down.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .combinatorics import CombinatorialType, RayPermutation
from .exact import RationalMatrix
from .grassmann import PluckerVector
from .moduli import Calibration, Inequality, SignVector
from .symmetry import GroupElement

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class FormatError(ValueError):
    """Input is not well-formed for the requested schema."""


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise FormatError(msg)


def _int(x, what: str) -> int:
    _need(isinstance(x, int) and not isinstance(x, bool), f"{what} must be an integer")
    return x


def _list(x, what: str) -> list:
    _need(isinstance(x, list), f"{what} must be a list")
    return x


def _obj(x, what: str) -> dict:
    _need(isinstance(x, dict), f"{what} must be an object")
    return x


# rationals and matrices ---------------------------------------------------

def rational_to_json(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: Any) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    _need(isinstance(s, str) and bool(_RATIONAL.match(s)), f"not a rational: {s!r}")
    try:
        return Fraction(s.replace(" ", ""))
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {s!r}") from None


def matrix_to_json(M: RationalMatrix) -> list:
    return [[rational_to_json(x) for x in col] for col in M.to_columns()]


def parse_matrix(cols: Any, nrows: int | None = None) -> RationalMatrix:
    cols = _list(cols, "matrix")
    _need(len(cols) > 0, "matrix needs at least one column")
    parsed = [[parse_rational(x) for x in _list(c, "matrix column")] for c in cols]
    lengths = {len(c) for c in parsed}
    _need(len(lengths) == 1, "matrix columns have different lengths")
    if nrows is not None:
        _need(lengths == {nrows}, f"matrix columns must have length {nrows}")
    _need(lengths != {0}, "matrix columns are empty")
    return RationalMatrix.from_columns(parsed)


# combinatorial types ------------------------------------------------------

def type_to_json(D: CombinatorialType) -> dict:
    return {
        "d": D.d,
        "n": D.n,
        "cones": [list(c) for c in sorted(c for c in D.cones if c)],
        "virtual": list(D.virtual),
    }


def parse_type(obj: Any) -> CombinatorialType:
    obj = _obj(obj, "type")
    for key in ("d", "n", "cones"):
        _need(key in obj, f"type is missing {key!r}")
    d, n = _int(obj["d"], "d"), _int(obj["n"], "n")
    _need(d >= 1 and n >= 1, "d and n must be positive")
    cones = []
    for c in _list(obj["cones"], "cones"):
        c = [_int(i, "cone index") for i in _list(c, "cone")]
        _need(len(set(c)) == len(c), f"cone {c} repeats an index")
        cones.append(c)
    virtual = [_int(i, "virtual index") for i in _list(obj.get("virtual", []), "virtual")]
    complete = obj.get("complete")
    _need(complete is None or isinstance(complete, bool), "complete must be a boolean")
    return CombinatorialType(d, n, cones, virtual, complete)


# calibrations -------------------------------------------------------------

def calibration_to_json(h: Calibration) -> dict:
    out = {"d": h.d, "n": h.n, "columns": matrix_to_json(h.matrix)}
    if h.chart != tuple(range(1, h.d + 1)):
        out["chart"] = list(h.chart)
    return out


def parse_calibration(obj: Any) -> Calibration:
    """Identity columns are validated: ValueError if they are not the identity."""
    obj = _obj(obj, "calibration")
    _need("columns" in obj, "calibration is missing 'columns'")
    M = parse_matrix(obj["columns"])
    if "d" in obj:
        _need(_int(obj["d"], "d") == M.rows, "d does not match the column length")
    if "n" in obj:
        _need(_int(obj["n"], "n") == M.cols, "n does not match the number of columns")
    chart = tuple(_int(i, "chart index") for i in _list(obj.get("chart", []), "chart"))
    return Calibration(M, chart)


def inequalities_to_json(qs) -> list:
    return [q.to_json() for q in qs]


def parse_inequalities(obj: Any) -> list[Inequality]:
    out = []
    for q in _list(obj, "inequalities"):
        q = _obj(q, "inequality")
        cone = tuple(_int(i, "cone index") for i in _list(q.get("cone"), "cone"))
        s = _int(q.get("sign"), "sign")
        _need(s in (-1, 1), "sign must be -1 or 1")
        out.append(Inequality(cone, s))
    return out


# signs, group elements, Pluecker vectors ----------------------------------

def _key(c) -> str:
    return "".join(map(str, c)) if all(i < 10 for i in c) else ",".join(map(str, c))


def _unkey(s: str) -> tuple:
    _need(isinstance(s, str) and s != "", "bad subset key")
    parts = s.split(",") if "," in s else list(s)
    _need(all(p.isdigit() for p in parts), f"bad subset key {s!r}")
    return tuple(int(p) for p in parts)


def signs_to_json(s: SignVector) -> dict:
    return {_key(c): v for c, v in s.items}


def parse_signs(obj: Any) -> SignVector:
    obj = _obj(obj, "signs")
    items = {}
    for k, v in obj.items():
        v = _int(v, "sign")
        _need(v in (-1, 0, 1), "sign must be -1, 0 or 1")
        items[tuple(sorted(_unkey(k)))] = v
    return SignVector.from_dict(items)


def group_element_to_json(g: GroupElement) -> dict:
    return {
        "tau": [g.tau(r) for r in sorted(g.tau.domain)],
        "sigma": [g.sigma(v) for v in sorted(g.sigma.domain)],
        "alpha": None if g.alpha is None else [list(col) for col in g.alpha],
        "A": None if g.A is None else [list(row) for row in g.A],
    }


def parse_group_element(obj: Any, D: CombinatorialType) -> GroupElement:
    """Images are listed in ascending order of the rays (resp. virtual indices) of D."""
    obj = _obj(obj, "group element")
    tau = [_int(i, "tau image") for i in _list(obj.get("tau"), "tau")]
    sigma = [_int(i, "sigma image") for i in _list(obj.get("sigma", []), "sigma")]
    _need(len(tau) == len(D.rays), f"tau must list {len(D.rays)} images")
    _need(len(sigma) == len(D.virtual), f"sigma must list {len(D.virtual)} images")
    _need(sorted(tau) == list(D.rays), "tau must permute the rays")
    _need(sorted(sigma) == list(D.virtual), "sigma must permute the virtual indices")
    alpha = obj.get("alpha")
    A = obj.get("A")
    if alpha is not None:
        alpha = tuple(tuple(_int(x, "alpha entry") for x in _list(c, "alpha column")) for c in _list(alpha, "alpha"))
    if A is not None:
        A = tuple(tuple(_int(x, "A entry") for x in _list(r, "A row")) for r in _list(A, "A"))
    return GroupElement(
        RayPermutation.from_mapping(dict(zip(D.rays, tau))),
        RayPermutation.from_mapping(dict(zip(D.virtual, sigma))),
        alpha,
        A,
    )


def plucker_to_json(p: PluckerVector) -> dict:
    return {"rank": p.rank, "n": p.n, "coords": {_key(S): rational_to_json(v) for S, v in p.coords}}


def parse_plucker(obj: Any) -> PluckerVector:
    from .grassmann import plucker_from_dict

    obj = _obj(obj, "Pluecker vector")
    r, n = _int(obj.get("rank"), "rank"), _int(obj.get("n"), "n")
    coords = {_unkey(k): parse_rational(v) for k, v in _obj(obj.get("coords"), "coords").items()}
    try:
        return plucker_from_dict(n, r, coords)
    except ValueError as e:
        raise FormatError(str(e)) from None


def stratum_to_json(s) -> dict:
    return {
        "signs": signs_to_json(s.sign_vector),
        "removed_cones": [list(c) for c in s.removed],
        "degenerate": type_to_json(s.degenerate),
        "witness": calibration_to_json(s.witness),
    }


# documents ----------------------------------------------------------------

def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg} at line {e.lineno}") from None


def dumps(obj: Any) -> str:
    """Stable rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
