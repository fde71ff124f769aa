"""Command-line interface: JSON in, JSON (or SVG) out.

Exit codes: 0 success, 1 domain error, 2 malformed input or usage error.
Errors are always reported as a JSON object on stdout.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Callable

from . import io
from .combinatorics import (
    InvalidTypeError,
    cycle_type,
    full_cone_type,
    product_p1_p2,
    require_valid,
    simplex_type,
    validate,
)
from .degeneration import (
    OutsideClosureError,
    classify,
    degenerate_type,
    projected_calibration,
    removed_cones,
    strata_scan,
    zero_patterns,
)
from .exact import DimensionError, PreconditionError, RationalMatrix
from .grassmann import chart_normalize, closure_conditions, complement, gale, plucker, transition
from .moduli import (
    Calibration,
    UnsupportedTypeError,
    component_inequalities,
    det_signs,
    in_U,
    is_admissible,
    reference_calibration,
)
from .render import render
from .symmetry import canonical_form, group_elements, isomorphic, orbit

_NAMED = re.compile(r"^(S|C|orthant)(\d+)$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# input resolution
# --------------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise io.FormatError(f"cannot read {path}: {e.strerror}") from None


def _named_type(name: str):
    if name == "P1xP2":
        return product_p1_p2(True)
    m = _NAMED.match(name)
    if not m:
        return None
    kind, k = m.group(1), int(m.group(2))
    if kind == "S" and 1 <= k <= 8:
        return simplex_type(k)
    if kind == "C" and 3 <= k <= 40:
        return cycle_type(k)
    if kind == "orthant" and 1 <= k <= 8:
        return full_cone_type(k)
    raise io.FormatError(f"named type {name} is out of range")


class Inputs:
    """Pulls named inputs from their own flags or from the --in document."""

    def __init__(self, args):
        self.args = args
        self._doc = None
        self._doc_loaded = False

    def _document(self):
        if not self._doc_loaded:
            src = self.args.input or "-"
            self._doc = io.loads(_read(src))
            self._doc_loaded = True
        return self._doc

    def raw(self, name: str, sole: bool, optional: bool = False):
        flag = getattr(self.args, name, None)
        if flag is not None:
            return io.loads(_read(flag))
        if optional and not self._doc_loaded and self.args.input is None:
            return None
        doc = self._document()
        if isinstance(doc, dict) and name in doc:
            return doc[name]
        if sole:
            return doc
        if optional:
            return None
        raise io.FormatError(f"missing input {name!r}: pass --{name} or include it in the document")

    def type(self, sole: bool = True):
        flag = getattr(self.args, "type", None)
        if flag is not None:
            named = _named_type(flag)
            if named is not None:
                return named
        return io.parse_type(self.raw("type", sole))

    def calibration(self, name: str = "cal", sole: bool = False) -> Calibration:
        return _calibration(self.raw(name, sole))

    def base(self, D) -> Calibration:
        obj = self.raw("base", sole=False, optional=True)
        if obj is not None:
            return _calibration(obj)
        h0 = reference_calibration(D)
        if h0 is None:
            raise io.FormatError("no base calibration given and no reference is known for this type")
        return h0

    def kernel(self) -> RationalMatrix:
        if getattr(self.args, "cal", None) is not None:
            return gale(self.calibration())
        obj = self.raw("kernel", sole=False, optional=True)
        if obj is not None:
            return _kernel(obj)
        doc = self._document()
        if isinstance(doc, dict) and "cal" in doc:
            return gale(_calibration(doc["cal"]))
        if isinstance(doc, dict) and "columns" in doc and "d" in doc:
            return gale(_calibration(doc))
        return _kernel(doc)


def _calibration(obj) -> Calibration:
    try:
        return io.parse_calibration(obj)
    except io.FormatError:
        raise
    except ValueError as e:
        raise io.FormatError(str(e)) from None


def _kernel(obj) -> RationalMatrix:
    if isinstance(obj, dict):
        obj = obj.get("columns")
    return io.parse_matrix(obj)


def _subset(text: str, what: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise io.FormatError(f"{what} must be a comma-separated list of indices") from None
    if len(set(out)) != len(out):
        raise io.FormatError(f"{what} repeats an index")
    return out


def _check_sizes(h: Calibration, D) -> None:
    if (h.d, h.n) != (D.d, D.n):
        raise DimensionError(f"calibration is {h.d}x{h.n} but the type has d={D.d}, n={D.n}")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_validate(inp: Inputs, args) -> Any:
    D = inp.type()
    v = validate(D)
    if v is not None:
        raise InvalidTypeError(v)
    return {"valid": True, "maximal_cones": [list(c) for c in D.maximal_cones]}


def cmd_admissible(inp, args):
    D = inp.type(sole=False)
    h = inp.calibration()
    require_valid(D)
    _check_sizes(h, D)
    return {"admissible": is_admissible(h, D)}


def cmd_signs(inp, args):
    D = inp.type(sole=False)
    h = inp.calibration()
    require_valid(D)
    return {"signs": io.signs_to_json(det_signs(h, D)), "in_U": in_U(h, D)}


def cmd_inequalities(inp, args):
    D = inp.type(sole=False)
    require_valid(D)
    h0 = inp.base(D)
    _check_sizes(h0, D)
    return io.inequalities_to_json(component_inequalities(D, h0))


def cmd_autgroup(inp, args):
    D = inp.type()
    require_valid(D)
    G = group_elements(D)
    return {"order": len(G), "elements": [io.group_element_to_json(g) for g in G]}


def cmd_orbit(inp, args):
    D = inp.type(sole=False)
    h = inp.calibration()
    require_valid(D)
    _check_sizes(h, D)
    orb = orbit(h, D)
    return {"size": len(orb), "orbit": [io.calibration_to_json(x) for x in orb]}


def cmd_canonical(inp, args):
    D = inp.type(sole=False)
    h = inp.calibration()
    require_valid(D)
    _check_sizes(h, D)
    return io.calibration_to_json(canonical_form(h, D))


def cmd_isomorphic(inp, args):
    D = inp.type(sole=False)
    h1 = inp.calibration()
    h2 = inp.calibration("other")
    require_valid(D)
    _check_sizes(h1, D)
    _check_sizes(h2, D)
    ok, g = isomorphic(h1, h2, D)
    return {"isomorphic": ok, "witness": io.group_element_to_json(g) if g is not None else None}


def cmd_gale(inp, args):
    h = inp.calibration(sole=True)
    k = gale(h)
    return {"n": k.rows, "rank": k.cols, "columns": io.matrix_to_json(k)}


def cmd_plucker(inp, args):
    return io.plucker_to_json(plucker(inp.kernel()))


def cmd_chart(inp, args):
    k = inp.kernel()
    rows = _subset(args.rows, "--rows")
    s = chart_normalize(k, rows)
    return {
        "rows": list(s.rows),
        "transverse": list(s.transverse),
        "section": {"n": s.k.rows, "rank": s.k.cols, "columns": io.matrix_to_json(s.k)},
    }


def cmd_transition(inp, args):
    k = inp.kernel()
    I, J = _subset(args.source, "--from"), _subset(args.target, "--to")
    K = transition(k, I, J)
    return {
        "from": sorted(I),
        "to": sorted(J),
        "from_transverse": list(complement(I, k.rows)),
        "to_transverse": list(complement(J, k.rows)),
        "matrix": io.matrix_to_json(K),
    }


def cmd_closure(inp, args):
    D = inp.type(sole=False)
    require_valid(D)
    h0 = inp.base(D)
    _check_sizes(h0, D)
    return [c.to_json(D.n) for c in closure_conditions(D, h0)]


def cmd_degenerate(inp, args):
    D = inp.type(sole=False)
    h = inp.calibration()
    _check_sizes(h, D)
    Dp = degenerate_type(h, D)
    return {"degenerate": io.type_to_json(Dp), "removed_cones": [list(c) for c in removed_cones(h, D)]}


def cmd_zeropatterns(inp, args):
    D = inp.type()
    F = zero_patterns(D)
    out = {"n": F.n, "patterns": [list(p) for p in F.sorted_patterns()]}
    if args.member is not None:
        z = _subset(args.member, "--member") if args.member else ()
        if any(i < 1 or i > F.n for i in z):
            raise io.FormatError(f"--member indices must lie in [1,{F.n}]")
        out["member"] = z in F
    return out


def cmd_classify(inp, args):
    D = inp.type(sole=False)
    h = inp.calibration()
    require_valid(D)
    h0 = inp.base(D)
    _check_sizes(h, D)
    _check_sizes(h0, D)
    return io.stratum_to_json(classify(h, D, h0))


def cmd_strata_scan(inp, args):
    D = inp.type(sole=False)
    require_valid(D)
    h0 = inp.base(D)
    _check_sizes(h0, D)
    if args.samples < 1:
        raise io.FormatError("--samples must be positive")
    chart = _subset(args.chart, "--chart") if args.chart else None
    strata = strata_scan(D, h0, chart=chart, samples=args.samples, seed=args.seed)
    return {
        "chart": list(chart) if chart else list(range(1, D.d + 1)),
        "samples": args.samples,
        "seed": args.seed,
        "count": len(strata),
        "strata": [io.stratum_to_json(s) for s in strata],
    }


def cmd_project(inp, args):
    h = inp.calibration(sole=True)
    alpha, row = projected_calibration(h, args.i, args.j)
    return {"alpha": io.rational_to_json(alpha), "row": [io.rational_to_json(x) for x in row]}


def cmd_render(inp, args):
    D = inp.type(sole=False)
    h = inp.calibration()
    require_valid(D)
    _check_sizes(h, D)
    return render(h, D)


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "check the axioms of a combinatorial type"),
    "admissible": (cmd_admissible, "geometric admissibility of a calibration"),
    "signs": (cmd_signs, "signs of the maximal-cone determinants"),
    "inequalities": (cmd_inequalities, "sign conditions of the chart component through a base point"),
    "autgroup": (cmd_autgroup, "automorphism group of a type"),
    "orbit": (cmd_orbit, "orbit of a calibration under the symmetry group"),
    "canonical": (cmd_canonical, "lexicographically least orbit element"),
    "isomorphic": (cmd_isomorphic, "decide isomorphism of two calibrations"),
    "gale": (cmd_gale, "kernel basis of a calibration"),
    "plucker": (cmd_plucker, "normalised Pluecker coordinates"),
    "chart": (cmd_chart, "section of a Grassmannian chart"),
    "transition": (cmd_transition, "transition matrix between two charts"),
    "closure": (cmd_closure, "weak Pluecker sign conditions of the compactified chart"),
    "degenerate": (cmd_degenerate, "pointwise degenerate type"),
    "zeropatterns": (cmd_zeropatterns, "allowed zero patterns of the quotient variety"),
    "classify": (cmd_classify, "boundary stratum of a calibration"),
    "strata-scan": (cmd_strata_scan, "sample the boundary strata of a chart"),
    "project": (cmd_project, "rank-one projection of a negatively collinear pair (d = 2)"),
    "render": (cmd_render, "SVG drawing of a 2-dimensional fan"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fanmoduli", description="Combinatorial moduli of calibrated fans.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_, description=help_)
        s.add_argument("--in", dest="input", help="input JSON document (default stdin)")
        s.add_argument("--out", help="write the result here instead of stdout")
        s.add_argument("--type", help="type JSON file, or a name such as C4, S2, P1xP2, orthant3")
        s.add_argument("--cal", help="calibration JSON file")
        s.add_argument("--base", help="base calibration JSON file (default: shipped reference)")
        if name == "isomorphic":
            s.add_argument("--other", help="second calibration JSON file")
        if name in ("plucker", "chart", "transition"):
            s.add_argument("--kernel", help="kernel basis JSON file (columns)")
        if name == "chart":
            s.add_argument("--rows", required=True, help="chart rows, e.g. 3,4")
        if name == "transition":
            s.add_argument("--from", dest="source", required=True, help="source chart rows")
            s.add_argument("--to", dest="target", required=True, help="target chart rows")
        if name == "zeropatterns":
            s.add_argument("--member", help="zero set to test, e.g. 1,4 (empty string for none)")
        if name == "strata-scan":
            s.add_argument("--samples", type=int, required=True)
            s.add_argument("--seed", type=int, required=True)
            s.add_argument("--chart", help="identity columns of the chart, e.g. 2,3")
        if name == "project":
            s.add_argument("--i", type=int, required=True)
            s.add_argument("--j", type=int, required=True)
    return p


_DOMAIN_ERRORS = (
    (OutsideClosureError, "outside_closure"),
    (UnsupportedTypeError, "unsupported"),
    (DimensionError, "dimension"),
    (PreconditionError, "precondition"),
    (NotImplementedError, "unsupported"),
    (ValueError, "domain"),
)


def _emit_error(payload: dict, stream) -> None:
    stream.write(json.dumps(payload, sort_keys=True) + "\n")


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
    except UsageError as e:
        sys.stderr.write(parser.format_usage())
        _emit_error({"error": "usage", "message": str(e)}, stdout)
        return 2
    func = COMMANDS[args.command][0]
    try:
        result = func(Inputs(args), args)
    except io.FormatError as e:
        _emit_error({"error": "malformed_input", "message": str(e)}, stdout)
        return 2
    except InvalidTypeError as e:
        _emit_error(e.violation.to_json(), stdout)
        return 1
    except RecursionError:
        _emit_error({"error": "malformed_input", "message": "input is nested too deeply"}, stdout)
        return 2
    except Exception as e:  # every failure is reported as JSON
        kind = next((k for cls, k in _DOMAIN_ERRORS if isinstance(e, cls)), "internal")
        _emit_error({"error": kind, "message": str(e) or type(e).__name__}, stdout)
        return 1
    text = result if isinstance(result, str) else io.dumps(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
