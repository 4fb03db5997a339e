"""JSON formats for bodies, arrangements, traces and reports.

Rationals are written as ``"p/q"`` strings and floats with 17 significant
digits, and arrangement points are sorted lexicographically, so a canonical
file survives load-then-save byte for byte.
"""
from __future__ import annotations

import json
from fractions import Fraction

from ._numeric import FLOAT, MODES, RATIONAL, format_number, parse_number
from .convex import ConvexBody
from .torus import Arrangement, Lattice


class FormatError(ValueError):
    """Malformed input; the message names the offending field."""


def _num_out(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return format_number(Fraction(x))
    return float(x)


def _point_out(p):
    return [_num_out(c) for c in p]


def body_to_dict(C):
    return {
        "d": C.d,
        "vertices": [_point_out(v) for v in C.vertices],
        "symmetric": C.symmetric,
        "arithmetic": C.arithmetic,
    }


def _require(obj, key, where):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}.{key}: missing field")
    return obj[key]


def _read_point(values, mode, where, d=None):
    if not isinstance(values, list):
        raise FormatError(f"{where}: expected a list of coordinates")
    if d is not None and len(values) != d:
        raise FormatError(f"{where}: expected {d} coordinates, got {len(values)}")
    try:
        return tuple(parse_number(v, mode) for v in values)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def body_from_dict(obj, where="body", arithmetic=None):
    """Parse Body JSON; ``arithmetic`` overrides the file's mode."""
    mode = arithmetic or (obj.get("arithmetic", RATIONAL) if isinstance(obj, dict) else None)
    if mode not in MODES:
        raise FormatError(f"{where}.arithmetic: expected one of {MODES}, got {mode!r}")
    d = _require(obj, "d", where)
    if not isinstance(d, int) or isinstance(d, bool):
        raise FormatError(f"{where}.d: expected an integer")
    verts = _require(obj, "vertices", where)
    if not isinstance(verts, list):
        raise FormatError(f"{where}.vertices: expected a list")
    pts = [_read_point(v, mode, f"{where}.vertices[{i}]", d) for i, v in enumerate(verts)]
    sym = obj.get("symmetric")
    if sym is not None and not isinstance(sym, bool):
        raise FormatError(f"{where}.symmetric: expected a boolean")
    try:
        return ConvexBody(pts, symmetric=sym, arithmetic=mode)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def arrangement_to_dict(A):
    return {
        "body": body_to_dict(A.body),
        "lattice": [_point_out(r) for r in A.lattice.matrix],
        "points": [_point_out(p) for p in sorted(A.points)],
    }


def arrangement_from_dict(obj, arithmetic=None):
    body = body_from_dict(_require(obj, "body", "arrangement"), "arrangement.body", arithmetic)
    mode = body.arithmetic
    rows = _require(obj, "lattice", "arrangement")
    if not isinstance(rows, list) or len(rows) != body.d:
        raise FormatError(f"arrangement.lattice: expected a {body.d}x{body.d} matrix")
    matrix = [_read_point(r, mode, f"arrangement.lattice[{i}]", body.d) for i, r in enumerate(rows)]
    pts = _require(obj, "points", "arrangement")
    if not isinstance(pts, list):
        raise FormatError("arrangement.points: expected a list")
    points = [_read_point(p, mode, f"arrangement.points[{i}]", body.d) for i, p in enumerate(pts)]
    try:
        return Arrangement(body, Lattice(matrix, mode), points)
    except ValueError as exc:
        raise FormatError(f"arrangement: {exc}") from None


def trace_to_dict(trace):
    return {
        "direction": trace.direction,
        "alpha": _num_out(trace.alpha),
        "epsilon": _num_out(trace.epsilon),
        "steps": [
            {
                "i": s.i,
                "y": _point_out(s.y),
                "point": _point_out(s.point),
                "S_before": _num_out(s.S_before),
                "S_after": _num_out(s.S_after),
                "claim_ok": s.claim_ok,
                "decrement_ok": s.decrement_ok,
            }
            for s in trace.steps
        ],
        "l": trace.l,
        "certified": trace.certified,
    }


def trace_from_dict(obj):
    """Parse Trace JSON into plain data (points and numbers as Fractions or floats)."""

    def num(v):
        return parse_number(v, RATIONAL if isinstance(v, (str, int)) else FLOAT)

    steps = []
    for k, s in enumerate(_require(obj, "steps", "trace")):
        where = f"trace.steps[{k}]"
        steps.append({
            "i": _require(s, "i", where),
            "y": tuple(num(v) for v in _require(s, "y", where)),
            "point": tuple(num(v) for v in _require(s, "point", where)),
            "S_before": num(_require(s, "S_before", where)),
            "S_after": num(_require(s, "S_after", where)),
        })
    return {
        "direction": obj.get("direction"),
        "alpha": num(_require(obj, "alpha", "trace")),
        "epsilon": num(_require(obj, "epsilon", "trace")),
        "steps": steps,
        "l": _require(obj, "l", "trace"),
        "certified": _require(obj, "certified", "trace"),
    }


def transform_report(res):
    out = {
        "direction": res.trace.direction,
        "refinement": res.refinement,
        "points_before": len(res.start.points),
        "points_after": len(res.output.points),
        "alpha": _num_out(res.trace.alpha),
        "epsilon": _num_out(res.trace.epsilon),
        "density_before": _num_out(res.density_before),
        "density_after": _num_out(res.density_after),
        "alpha_bound": _num_out(res.bound),
        "bound_satisfied": res.bound_satisfied,
        "vacuous_bound": res.vacuous_bound,
        "output_verified": res.output_verified,
        "steps": res.trace.l,
        "step_bound_ok": res.trace.step_bound_ok,
        "certified": res.trace.certified,
    }
    if res.theorem_bound is not None:
        out["theorem_bound"] = res.theorem_bound
        out["theorem_branch"] = res.theorem_branch
        out["theorem_bound_satisfied"] = res.theorem_bound_satisfied
    return out


def density_report_to_dict(rep):
    return {
        "density": _num_out(rep.density),
        "kind": rep.kind,
        "epsilon_effective": _num_out(rep.epsilon_effective),
        "theorem_bound": rep.theorem_bound,
        "theorem_branch": rep.theorem_branch,
        "comparisons": [{"name": c.name, "value": c.value, "stronger": c.stronger}
                        for c in rep.comparisons],
        "consistent": rep.consistent,
    }


# -- canonical text ------------------------------------------------------------


def _scalar(v):
    if isinstance(v, float):
        if v != v or v in (float("inf"), float("-inf")):
            raise ValueError("non-finite number in JSON output")
        return format(v, ".17g")
    return json.dumps(v)


def _is_flat(v):
    return isinstance(v, list) and all(not isinstance(e, (list, dict)) for e in v)


def _dump(v, level):
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(val, level + 1)}" for k, val in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(v, list):
        if _is_flat(v):
            return "[" + ", ".join(_scalar(e) for e in v) + "]"
        return "[\n" + ",\n".join(pad + _dump(e, level + 1) for e in v) + "\n" + end + "]"
    return _scalar(v)


def dumps(obj):
    """Deterministic JSON text; floats carry 17 significant digits."""
    return _dump(obj, 0) + "\n"


def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_arrangement(path, arithmetic=None):
    with open(path, encoding="utf-8") as fh:
        return arrangement_from_dict(loads(fh.read(), str(path)), arithmetic)


def save_arrangement(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(arrangement_to_dict(A)))


def save_trace(trace, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(trace_to_dict(trace)))


def load_trace(path):
    with open(path, encoding="utf-8") as fh:
        return trace_from_dict(loads(fh.read(), str(path)))
