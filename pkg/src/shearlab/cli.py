"""Command-line front end.

Exit codes: 0 pass / certified / consistent, 1 fail / not certified /
inconsistent or inconclusive, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import atlas
from . import certificates as cert
from . import harmonic as hm
from . import numeric as nu
from . import series as ps
from . import theorems as th
from .harmonic import HarmonicMap
from .rational import GaussianRational
from .series import DEFAULT_ORDER, PowerSeries

SCHEMA = 1
SUBCOMMANDS = ("certify", "probe", "convolve", "partial-sum", "scenario", "emit-curve", "atlas")
EVAL_GROWTH = 4
PROBES = ("re-condition", "starlike", "jacobian", "direction", "injectivity")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        return complex(text.replace("i", "j"))


def parse_polynomial(text: str, order: int, mode: str = "auto") -> PowerSeries:
    """``poly:c0,c1,...``; exact when every entry is a rational (unless ``mode`` is float)."""
    items = [_parse_scalar(t) for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError("empty coefficient list")
    exact = mode != "float" and all(isinstance(c, Fraction) for c in items)
    if mode == "exact" and not exact:
        raise ValueError("--exact needs rational polynomial coefficients")
    order = max(order, len(items) - 1)
    return PowerSeries.polynomial(items if exact else [complex(c) for c in items], order, exact=exact)


def _from_doc(doc: dict) -> PowerSeries | HarmonicMap:
    if "h" in doc and "g" in doc:
        return HarmonicMap.from_dict(doc)
    if "series" in doc and isinstance(doc["series"], dict):
        return _from_doc(doc["series"])
    return PowerSeries.from_dict(doc)


def _stored(obj, mode: str):
    if mode == "float" and obj.exact:
        return obj.to_float()
    if mode == "exact" and not obj.exact:
        raise ValueError("--exact given but the input document holds float coefficients")
    return obj


def load_object(src: str, order: int, mode: str = "auto") -> PowerSeries | HarmonicMap:
    """Read ``-`` (stdin JSON), a JSON file, ``poly:c0,c1,...`` or an atlas name.

    ``mode`` is ``auto`` (exact where representable), ``exact`` or ``float``.
    """
    if src == "-":
        return _stored(_from_doc(json.loads(sys.stdin.read())), mode)
    if src.startswith("poly:"):
        return parse_polynomial(src[5:], order, mode)
    if os.path.isfile(src):
        with open(src, encoding="utf-8") as fh:
            return _stored(_from_doc(json.load(fh)), mode)
    if mode == "float":
        return atlas.from_name(src, order, False)
    try:
        return atlas.from_name(src, order, True)
    except (ValueError, TypeError):
        if mode == "exact":
            raise
    return atlas.from_name(src, order, False)


def load_series(src: str, order: int, mode: str = "auto", part: str = "h") -> PowerSeries:
    obj = load_object(src, order, mode)
    if isinstance(obj, PowerSeries):
        return obj
    if part == "h":
        return obj.h
    if part == "g":
        return obj.g
    if part.startswith("slice:"):
        return hm.shear_slice(obj, atlas.parse_angle(part[6:]))
    raise UsageError(f"--part must be h, g or slice:<theta>, got {part!r}")


def load_map(src: str, order: int, mode: str = "float") -> HarmonicMap:
    obj = load_object(src, order, mode)
    return obj if isinstance(obj, HarmonicMap) else HarmonicMap.analytic(obj)


# ---------------------------------------------------------------------------
# output


def _coeff_text(c) -> str:
    if isinstance(c, GaussianRational):
        if c.im == 0:
            return str(c.re)
        return f"{c.re}{'+' if c.im >= 0 else '-'}{abs(c.im)}i"
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    return f"{c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}i"


def _tail(s: PowerSeries, d: int) -> list[str]:
    return [_coeff_text(s[k]) for k in range(2, d + 1)]


def object_document(obj: PowerSeries | HarmonicMap) -> dict:
    """Full coefficient arrays plus a readable ``coefficients`` list.

    ``coefficients`` holds the entries of degree >= 2 up to the last nonzero
    one: ``a_2..a_d`` for a series, ``h_2..h_d`` followed by ``g_2..g_d`` for
    a harmonic map.
    """
    if isinstance(obj, HarmonicMap):
        d = max(obj.h.degree(), obj.g.degree())
        doc = {"kind": "harmonic"} | obj.to_dict()
        doc["coefficients"] = _tail(obj.h, d) + _tail(obj.g, d)
        doc["linear"] = [_coeff_text(obj.h[1]), _coeff_text(obj.g[1])]
    else:
        doc = {"kind": "series"} | obj.to_dict()
        doc["coefficients"] = _tail(obj, obj.degree())
        doc["linear"] = _coeff_text(obj[1])
    return doc


def emit(doc: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA} | doc, default=_json_default) + "\n")


def _json_default(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def format_fixed(x: float) -> str:
    """10 significant digits, positional notation."""
    return np.format_float_positional(x, precision=10, unique=False, fractional=False, trim="k")


# ---------------------------------------------------------------------------
# subcommands


def _mode(args) -> str:
    return "exact" if args.exact else ("float" if args.float else "auto")


def _grid(args) -> nu.DiskGrid:
    return nu.DiskGrid.parse(args.grid) if args.grid else nu.DiskGrid.from_env()


def _eval_order(args, r_max: float) -> int:
    """Explicit ``--order``, else an order whose tail is negligible at ``r_max``."""
    if args.order is not None:
        return args.order
    return max(DEFAULT_ORDER, ps.order_for_radius(r_max, growth=EVAL_GROWTH))


def cmd_certify(args, out) -> int:
    f = load_series(args.series, args.order, _mode(args), args.part)
    theta = atlas.parse_angle(args.theta) if args.theta is not None else math.pi / 2
    c = cert.certify(f, args.cls, theta)
    emit({"command": "certify", "certificate": c.to_dict(), "series": f.to_dict()}, out)
    return 0 if c.certified else 1


def cmd_probe(args, out) -> int:
    if not (args.map or args.series):
        raise UsageError("probe needs --map or --series")
    grid = _grid(args)
    kind = args.kind
    r_top = args.radius if kind == "injectivity" else grid.r_max
    args.order = _eval_order(args, r_top)
    if kind == "re-condition":
        q = load_series(args.series or args.map, args.order, "float", args.part)
        alpha_u = atlas.unit(atlas.parse_angle(args.alpha_angle))
        gamma_u = atlas.unit(atlas.parse_angle(args.gamma_angle))
        if args.kernel_n != 2:
            q = nu.condition_series(q, alpha_u, gamma_u, args.kernel_n)
        rep = nu.re_min_on_grid(q, prefactor=None if args.no_prefactor else alpha_u, grid=grid)
        doc = rep.to_dict()
        ok = rep.passed
    elif kind == "starlike":
        f = load_series(args.series or args.map, args.order, "float", args.part)
        rep = nu.n_starlike_probe(f, args.n, args.alpha, grid)
        doc, ok = rep.to_dict(), rep.passed
    elif kind == "jacobian":
        f = load_map(args.map or args.series, args.order)
        scan = nu.jacobian_scan(f, grid)
        doc = scan.to_dict()
        ok = not scan.sign_changes and scan.min_J > 0
        doc["verdict"] = nu.PASS if ok else nu.FAIL
    elif kind == "direction":
        f = load_map(args.map or args.series, args.order)
        theta = atlas.parse_angle(args.theta) if args.theta is not None else 0.0
        rep = nu.direction_convexity_probe(f, theta, radii=grid.radii, samples=args.samples or grid.angular_samples)
        doc, ok = rep.to_dict(), rep.passed
    else:
        f = load_map(args.map or args.series, args.order)
        rep = nu.boundary_injectivity_probe(f, args.radius, samples=args.samples or nu.DEFAULT_SAMPLES, min_gap=args.min_gap)
        doc, ok = rep.to_dict(), rep.passed
    emit({"command": "probe", "probe": kind, "grid": {"radii": list(grid.radii), "angular_samples": grid.angular_samples},
          "report": doc}, out)
    return 0 if ok else 1


def cmd_convolve(args, out) -> int:
    a = load_object(args.map, args.order, _mode(args))
    b = load_object(args.with_, args.order, _mode(args))
    if isinstance(a, HarmonicMap) and isinstance(b, HarmonicMap):
        if args.tilde:
            raise UsageError("--tilde needs an analytic --with operand")
        res = hm.harmonic_convolve(a, b)
    elif isinstance(a, HarmonicMap):
        res = hm.tilde_convolve(a, b)
    elif isinstance(b, HarmonicMap):
        raise UsageError("put the harmonic operand in --map")
    else:
        if args.tilde:
            a = HarmonicMap.analytic(a)
            res = hm.tilde_convolve(a, b)
        else:
            res = ps.hadamard(a, b)
    if args.partial is not None:
        res = hm.harmonic_partial_sum(res, args.partial) if isinstance(res, HarmonicMap) else ps.partial_sum(res, args.partial)
    emit({"command": "convolve"} | object_document(res), out)
    return 0


def cmd_partial_sum(args, out) -> int:
    obj = load_object(args.map, args.order, _mode(args))
    res = hm.harmonic_partial_sum(obj, args.p) if isinstance(obj, HarmonicMap) else ps.partial_sum(obj, args.p)
    emit({"command": "partial-sum"} | object_document(res), out)
    return 0


def _parse_params(items) -> dict:
    params = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects k=v, got {item!r}")
        params[key.strip()] = value.strip()
    return params


def cmd_scenario(args, out) -> int:
    if args.action == "list":
        descs = th.list_scenarios()
        if args.json:
            emit({"command": "scenario list", "scenarios": [d.to_dict() for d in descs]}, out)
        else:
            for d in descs:
                out.write(f"{d.id:12s} {d.expected:15s} {d.title}\n")
        return 0
    if not args.id:
        raise UsageError("scenario run needs an id")
    try:
        th.get_descriptor(args.id)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    report = th.run_scenario(args.id, _parse_params(args.param), grid=_grid(args))
    if args.json:
        emit({"command": "scenario run"} | report.to_dict(), out)
    else:
        out.write(f"{report.id}: {report.overall} ({len(report.checks)} checks, {report.elapsed:.2f} s)\n")
        for c in report.checks:
            mark = "ok " if c.matches else ("?? " if c.matches is None else "XX ")
            exp = "" if c.expected_pass else " (expected to fail)"
            out.write(f"  {mark}[{c.kind}] {c.name}: {c.outcome}{exp}\n")
    return 0 if report.consistent else 1


def cmd_emit_curve(args, out) -> int:
    if not 0 < args.radius < 1:
        raise UsageError("--radius must lie in (0, 1)")
    obj = load_object(args.map, _eval_order(args, args.radius), "float")
    t, w = nu.emit_curve(obj, args.radius, args.samples)
    target = open(args.output, "w", newline="", encoding="utf-8") if args.output else out
    try:
        writer = csv.writer(target, lineterminator="\n")
        writer.writerow(("t", "re", "im"))
        for ti, wi in zip(t.tolist(), w.tolist()):
            writer.writerow((format_fixed(ti), format_fixed(wi.real), format_fixed(wi.imag)))
    finally:
        if args.output:
            target.close()
    return 0


def cmd_atlas(args, out) -> int:
    if not args.name:
        emit({"command": "atlas", "names": list(atlas.NAMES)}, out)
        return 0
    obj = load_object(args.name, args.order, _mode(args))
    emit({"command": "atlas", "name": args.name} | object_document(obj), out)
    return 0


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\nvalid subcommands: {', '.join(SUBCOMMANDS)}\n")
        raise SystemExit(2)


def _order(text: str) -> int:
    n = int(text)
    if n < 8:
        raise argparse.ArgumentTypeError("truncation order must be >= 8")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_order, default=None,
                        help=f"truncation order N (>= 8); default {DEFAULT_ORDER}, or enough for the outer radius when probing")
    modes = common.add_mutually_exclusive_group()
    modes.add_argument("--exact", action="store_true", help="require exact rational coefficients")
    modes.add_argument("--float", action="store_true", help="force double-precision coefficients")
    common.add_argument("--grid", help="probe grid 'r1,r2,...:samples' (default: $SHEARLAB_GRID or built-in)")
    common.add_argument("--json", action="store_true", help="JSON output (default for all but 'scenario')")

    p = _Parser(prog="shearlab", description="Harmonic-map convolutions, coefficient certificates and numeric probes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser, metavar="{" + ",".join(SUBCOMMANDS) + "}")

    c = sub.add_parser("certify", parents=[common], help="coefficient certificate for a series")
    c.add_argument("--class", dest="cls", required=True,
                   help="starlike:<alpha>, salagean:<m>:<alpha>, n_squared, n_cubed, directional or odd")
    c.add_argument("--series", required=True, help="file, '-', poly:c0,c1,... or an atlas name")
    c.add_argument("--theta", help="angle for the n_squared / directional presets (default pi/2)")
    c.add_argument("--part", default="h", help="for harmonic input: h, g or slice:<theta>")
    c.set_defaults(func=cmd_certify)

    pr = sub.add_parser("probe", parents=[common], help="numeric probes on a grid")
    pr.add_argument("kind", choices=PROBES)
    pr.add_argument("--map", help="harmonic map source")
    pr.add_argument("--series", help="analytic series source")
    pr.add_argument("--part", default="h", help="part of a harmonic input used by series probes")
    pr.add_argument("--n", type=int, default=0, help="starlike: Salagean level")
    pr.add_argument("--alpha", type=float, default=0.0, help="starlike: order alpha")
    pr.add_argument("--alpha-angle", default="0", help="re-condition: prefactor (1 - e^{i a} z)^2")
    pr.add_argument("--gamma-angle", default="0", help="re-condition: log kernel twist")
    pr.add_argument("--kernel-n", type=int, default=2, help="re-condition: use h * (log kernel)^(n-2)")
    pr.add_argument("--no-prefactor", action="store_true", help="re-condition: plain Re of the series")
    pr.add_argument("--theta", help="direction: angle")
    pr.add_argument("--radius", type=float, default=0.9, help="injectivity: circle radius")
    pr.add_argument("--samples", type=int, help="direction / injectivity: samples per circle")
    pr.add_argument("--min-gap", type=float, default=0.0, help="injectivity: required gap")
    pr.set_defaults(func=cmd_probe)

    cv = sub.add_parser("convolve", parents=[common], help="Hadamard / tilde / harmonic convolution")
    cv.add_argument("--tilde", action="store_true", help="f ~* phi with an analytic --with")
    cv.add_argument("--map", required=True)
    cv.add_argument("--with", dest="with_", required=True)
    cv.add_argument("--partial", type=int, help="truncate the result at degree p")
    cv.set_defaults(func=cmd_convolve)

    psub = sub.add_parser("partial-sum", parents=[common], help="partial sum of a series or map")
    psub.add_argument("--map", required=True)
    psub.add_argument("--p", type=int, required=True)
    psub.set_defaults(func=cmd_partial_sum)

    sc = sub.add_parser("scenario", parents=[common], help="list or run scenarios")
    sc.add_argument("action", choices=("list", "run"))
    sc.add_argument("id", nargs="?")
    sc.add_argument("--param", action="append", metavar="K=V")
    sc.set_defaults(func=cmd_scenario)

    ec = sub.add_parser("emit-curve", parents=[common], help="CSV image of |z| = r")
    ec.add_argument("--map", required=True)
    ec.add_argument("--radius", type=float, required=True)
    ec.add_argument("--samples", type=int, default=512)
    ec.add_argument("--output", help="write to a file instead of stdout")
    ec.set_defaults(func=cmd_emit_curve)

    at = sub.add_parser("atlas", parents=[common], help="list names or expand one")
    at.add_argument("name", nargs="?")
    at.set_defaults(func=cmd_atlas)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.func not in (cmd_probe, cmd_emit_curve) and args.order is None:
        args.order = DEFAULT_ORDER
    try:
        return args.func(args, out)
    except (UsageError, ValueError, KeyError, TypeError, ZeroDivisionError, json.JSONDecodeError, OSError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        sys.stderr.write(f"shearlab {args.command}: error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
