"""Command-line front end.

Exit status: 0 on success (for ``verify``: no violations), 1 when a
computation fails, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from . import __version__
from .classify import classify_extremal, euclidean_test, quarter_turn_map, tangent_defect
from .errors import DegenerateBody, DomainError, NormPiError, PreconditionError, SingularMap
from .geom import LinearMap2, Point2, symmetric_hull
from .norms import LinearImage, Lp, NormSpec, Polygonal, as_polygon, pushforward
from .pivalue import circumscribe_normalize, inscribed_hexagon, lp_pi_table, make_xt, pi_certificates
from .render import render_svg
from .verify import run_suite

EXACT_TOL = 1e-9
CERTIFIED_TOL = 1e-6

TOLERANCE_NOTE = (
    f"Default tolerances: {EXACT_TOL:g} for exact-polygonal results and "
    f"certificates, {CERTIFIED_TOL:g} for the width of certified intervals."
)


class InputError(Exception):
    """Malformed command-line input or norm file (exit status 2)."""


# -- serialization ---------------------------------------------------------

def fmt(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return "%.17g" % (x + 0.0)


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt(obj) if math.isfinite(obj) else json.dumps(fmt(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    return _encode(obj)


def _pt(p) -> list[float]:
    return [float(p[0]), float(p[1])]


def _matrix(T: LinearMap2) -> list[list[float]]:
    return [[T.a11, T.a12], [T.a21, T.a22]]


# -- norm files ------------------------------------------------------------

def _number(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"key {key!r}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise InputError(f"key {key!r}: expected a finite number, got {value!r}")
    return float(value)


def _pair(value, key: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"key {key!r}: expected [x, y], got {value!r}")
    return _number(value[0], key), _number(value[1], key)


def parse_norm(doc, path: str = "norm") -> NormSpec:
    """Build a NormSpec from the decoded file; diagnostics name the key."""
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected an object with key 'type'")
    if "type" not in doc:
        raise InputError(f"key '{path}.type': missing")
    kind = doc["type"]

    def need(key):
        if key not in doc:
            raise InputError(f"key '{path}.{key}': missing for type {kind!r}")
        return doc[key]

    try:
        if kind == "polygon":
            verts = need("vertices")
            if not isinstance(verts, list):
                raise InputError(f"key '{path}.vertices': expected a list of [x, y]")
            pts = [_pair(v, f"{path}.vertices[{i}]") for i, v in enumerate(verts)]
            return Polygonal(symmetric_hull(pts))
        if kind == "lp":
            p = need("p")
            if p == "inf":
                return Lp(math.inf)
            return Lp(_number(p, f"{path}.p"))
        if kind == "linear_image":
            m = need("matrix")
            if not isinstance(m, list) or len(m) != 2:
                raise InputError(f"key '{path}.matrix': expected [[a, b], [c, d]]")
            (a, b), (c, d) = (_pair(r, f"{path}.matrix") for r in m)
            return LinearImage(LinearMap2(a, b, c, d), parse_norm(need("inner"), f"{path}.inner"))
        if kind == "xt":
            return make_xt(_number(need("t"), f"{path}.t"))
    except DegenerateBody as exc:
        raise InputError(f"key '{path}.vertices': degenerate unit ball ({exc})") from exc
    except DomainError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except SingularMap as exc:
        raise InputError(f"key '{path}.matrix': singular map ({exc})") from exc
    raise InputError(f"key '{path}.type': unknown type {kind!r}")


def load_norm(path: str) -> NormSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    return parse_norm(doc)


def _parse_ps(text: str) -> list[float]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if item.lower() == "inf":
            out.append(math.inf)
            continue
        try:
            out.append(float(item))
        except ValueError:
            raise InputError(f"--ps: {item!r} is not a number") from None
    if not out:
        raise InputError("--ps: empty list")
    return out


def _parse_u(text: str) -> Point2:
    parts = text.split(",")
    try:
        x, y = (float(s) for s in parts)
    except ValueError:
        raise InputError(f"--u: expected X,Y, got {text!r}") from None
    return Point2(x, y)


# -- commands --------------------------------------------------------------

def cmd_pi(args) -> dict:
    norm = load_norm(args.norm)
    tol = args.tol if args.tol is not None else CERTIFIED_TOL
    rep = pi_certificates(norm, tol)
    hexagon = rep.hexagon
    return {
        "lower": rep.lower,
        "upper": rep.upper,
        "method": rep.method,
        "certificates": {
            "hexagon": {
                "vertices": [_pt(v) for v in hexagon.vertices],
                "side_gauges": list(hexagon.side_gauges),
            },
            "normalization": {
                "matrix": _matrix(rep.normalization.T),
                "u": _pt(rep.normalization.u),
                "v": _pt(rep.normalization.v),
            },
        },
        "classification": rep.classification.name if rep.classification is not None else None,
    }


def cmd_classify(args) -> dict:
    norm = load_norm(args.norm)
    tol = args.tol if args.tol is not None else EXACT_TOL
    ball = as_polygon(norm)
    tag = classify_extremal(ball, tol).name if ball is not None else "generic"
    S = quarter_turn_map(norm, tol)
    euclid, resid = euclidean_test(norm, tol)
    return {
        "extremal": tag,
        "quarter_turn_basis": None if S is None else _matrix(S),
        "euclidean": euclid,
        "euclidean_residual": resid,
        "tangent_defect": tangent_defect(norm),
    }


def cmd_normalize(args) -> dict:
    norm = load_norm(args.norm)
    nz = circumscribe_normalize(norm, args.tol if args.tol is not None else EXACT_TOL)
    out = {"matrix": _matrix(nz.T), "u": _pt(nz.u), "v": _pt(nz.v), "vertices": None}
    ball = as_polygon(pushforward(nz.T, norm))
    if ball is not None:
        out["vertices"] = [_pt(v) for v in ball.vertices]
    return out


def cmd_hexagon(args) -> dict:
    norm = load_norm(args.norm)
    u = _parse_u(args.u) if args.u is not None else None
    cert = inscribed_hexagon(norm, args.tol if args.tol is not None else EXACT_TOL, u)
    return {
        "vertices": [_pt(v) for v in cert.vertices],
        "side_gauges": list(cert.side_gauges),
        "vertex_gauges": list(cert.vertex_gauges),
    }


def lp_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "lower", "upper"])
    for p, lo, hi in rows:
        w.writerow([fmt(p), fmt(lo), fmt(hi)])
    return buf.getvalue()


def cmd_lp_curve(args) -> Optional[dict]:
    ps = _parse_ps(args.ps)
    try:
        rows = lp_pi_table(ps, args.tol)
    except DomainError as exc:
        raise InputError(f"--ps: {exc}") from exc
    text = lp_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return {"rows": [{"p": p, "lower": lo, "upper": hi} for p, lo, hi in rows]}
    sys.stdout.write(text)
    return None


def cmd_verify(args):
    if args.trials < 0:
        raise InputError("--trials must be >= 0")
    report = run_suite(args.seed, args.trials, args.tol)
    return report.to_dict(), (0 if report.ok else 1)


def cmd_render(args) -> None:
    norm = load_norm(args.norm)
    svg = render_svg(norm, args.certificates)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normpi",
        description="Self-circumference (pi-value) of normed planes.",
        epilog=TOLERANCE_NOTE,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, norm=True, tol=True, out=True):
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=TOLERANCE_NOTE)
        if norm:
            p.add_argument("--norm", required=True, metavar="FILE", help="norm file (JSON)")
        if tol:
            p.add_argument("--tol", type=float, default=None, metavar="T")
        if out:
            p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
        p.set_defaults(func=fn)
        return p

    add("pi", cmd_pi, f"pi-value with certificates (default --tol {CERTIFIED_TOL:g})")
    add("classify", cmd_classify, f"extremal tag, quarter-turn map, Euclidean tests (default --tol {EXACT_TOL:g})")
    add("normalize", cmd_normalize, f"circumscribed-parallelogram normalization (default --tol {EXACT_TOL:g})")
    h = add("hexagon", cmd_hexagon, f"inscribed equilateral hexagon (default --tol {EXACT_TOL:g})")
    h.add_argument("--u", metavar="X,Y", help="first hexagon vertex (a unit extreme point)")
    lp = add("lp-curve", cmd_lp_curve, "table of pi-values of l^p", norm=False, tol=False, out=False)
    lp.add_argument("--ps", required=True, metavar="LIST", help="comma-separated p values, 'inf' allowed")
    lp.add_argument("--tol", type=float, default=CERTIFIED_TOL, metavar="T")
    lp.add_argument("--csv", metavar="PATH", help="write the CSV table here")
    v = add("verify", cmd_verify, "randomized property suite", norm=False, tol=False)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--tol", type=float, default=EXACT_TOL, metavar="T")
    r = add("render", cmd_render, "SVG picture of the unit circle", tol=False, out=False)
    r.add_argument("--out", required=True, metavar="PATH.svg")
    r.add_argument("--certificates", action="store_true",
                   help="draw the inscribed hexagon and circumscribed parallelogram")
    return parser


def _emit(result, out: Optional[str]) -> None:
    text = dumps(result) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "tol", None) is not None and not args.tol > 0.0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NormPiError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if result is not None:
        _emit(result, getattr(args, "out", None))
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
