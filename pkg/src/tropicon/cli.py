"""Command-line front end: ``tropicon <command> [options] INPUT.json``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import io as tio
from .convexfn import hull_from_supports, probes_below, supporting_function
from .errors import DimensionMismatch, KindMismatch, SchemaError, TropiconError
from .projection import ConvexSet, ModuleBasis, project_convex, project_module, member, proj_point
from .semifield import SemifieldKind
from .separation import (
    KbarHyperplane,
    check_certificate,
    separate_convex,
    separate_module,
    universal_separate,
)
from .plot import PlotSpec, PlotTarget, render

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SCHEMA = 2
EXIT_PRECONDITION = 3

DEFAULT_SAMPLES = 100
DEFAULT_PROBE_DELTA = 1

COMMANDS = ("separate", "member", "project", "support", "verify", "plot")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SCHEMA, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tropicon", description="Exact max-plus separation, projection and supporting functions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="instance JSON file, or - for standard input")
    p.add_argument("--universal", action="store_true",
                   help="separate: emit the projection-based certificate (coefficients may be +inf)")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help="verify: number of random combinations to test (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="verify: sampling seed (default %(default)s)")
    p.add_argument("--exp-coords", action="store_true",
                   help="plot: draw SVG axes in exponential coordinates")
    p.add_argument("--output", metavar="PATH", help="write the result here instead of standard output")
    p.add_argument("--target", choices=[t.value for t in PlotTarget], help="plot: what to sample")
    p.add_argument("--range", nargs=2, type=_fraction, metavar=("LO", "HI"), help="plot: sampling interval")
    p.add_argument("--resolution", type=int, help="plot: samples per axis")
    p.add_argument("--format", choices=("csv", "svg"), help="plot: output format")
    return p


def _read(path: str | None) -> Any:
    if path is None:
        raise SchemaError("an INPUT.json argument is required for this command")
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    doc = tio.loads(text)
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    return doc


def _set_and_point(doc: dict, kind: SemifieldKind):
    S = tio.decode_set(doc, kind)
    y = tio.decode_vector(tio.require_field(doc, "point", "instance"), kind, S.n, "point")
    return S, y


def _separate(doc, kind, args):
    S, y = _set_and_point(doc, kind)
    if isinstance(S, ModuleBasis):
        if args.universal:
            raise SchemaError("--universal applies to convex sets only")
        return separate_module(S, y)
    return universal_separate(S, y) if args.universal else separate_convex(S, y)


def _member(doc, kind, args):
    S, y = _set_and_point(doc, kind)
    if isinstance(S, ModuleBasis):
        return {"member": project_module(S, y) == y}
    return {"member": member(S, y)}


def _project(doc, kind, args):
    S, y = _set_and_point(doc, kind)
    if isinstance(S, ModuleBasis):
        return {"projection": project_module(S, y)}
    r = project_convex(S, y)
    return {"q": r.q, "nu": r.nu, "point": None if r.nu.is_bottom else proj_point(S, y)}


def _support(doc, kind, args):
    E = tio.decode_episet(doc, kind)
    if "probes" in doc:
        return hull_from_supports(E, tio.decode_probes(doc["probes"], kind))
    if "probe_points" in doc:
        xs = doc["probe_points"]
        if not isinstance(xs, list):
            raise SchemaError("probe_points: expected an array of points")
        pts = [tio.decode_vector(x, kind, E.n, f"probe_points[{i}]") for i, x in enumerate(xs)]
        delta = doc.get("delta", DEFAULT_PROBE_DELTA)
        if isinstance(delta, bool) or not isinstance(delta, (int, Fraction)) or delta <= 0:
            raise SchemaError("delta: expected a positive number")
        return hull_from_supports(E, probes_below(E, pts, delta))
    y = tio.decode_vector(tio.require_field(doc, "point", "instance"), kind, E.n, "point")
    nu = tio.decode_scalar(tio.require_field(doc, "nu", "instance"), kind, "nu")
    return supporting_function(E, y, nu)


def _verify(doc, kind, args):
    cert = tio.decode_certificate(doc, kind)
    report = check_certificate(cert, samples=args.samples, seed=args.seed)
    return {"ok": report.ok, "checked": report.checked, "failures": report.failures}


def _plot_spec(doc: dict, args) -> PlotSpec:
    section = doc.get("plot", {})
    if not isinstance(section, dict):
        raise SchemaError("plot: expected an object")
    target = args.target or section.get("target")
    if target is None:
        raise SchemaError("plot: no target given (use --target or a plot.target field)")
    lo, hi = args.range or section.get("range", (-4, 4))
    fields = dict(target=PlotTarget(target), lo=Fraction(lo), hi=Fraction(hi),
                  resolution=args.resolution or section.get("resolution", 17),
                  output=args.format or section.get("output", "csv"), exp_coords=args.exp_coords)
    try:
        return PlotSpec(**fields)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"plot: {exc}") from None


def _plot_payload(spec: PlotSpec, doc: dict, kind: SemifieldKind):
    t = spec.target
    if t is PlotTarget.DIFFAFFINE_GALLERY:
        return None
    if t is PlotTarget.SHADOW_UPPERSET_2D:
        S = tio.decode_set(doc, kind)
        if not isinstance(S, ConvexSet):
            raise SchemaError("shadow-upperset-2d needs a convex set")
        return S
    if t is PlotTarget.HYPERPLANE_REGION_2D:
        if "mode" in doc:
            return tio.decode_certificate(doc, kind).hyperplane
        u = tio.decode_diffaffine(doc, kind, "hyperplane")
        return KbarHyperplane(u.w_prime, u.d_prime, u.w_second, u.d_second)
    if "pieces" in doc:
        return tio.decode_hull(doc, kind)
    if "graph_points" in doc:
        return tio.decode_episet(doc, kind)
    return tio.decode_diffaffine(doc, kind)


HANDLERS = {"separate": _separate, "member": _member, "project": _project,
            "support": _support, "verify": _verify}


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    try:
        if args.command == "plot":
            doc = _read(args.input) if args.input else {}
            kind = tio.resolve_kind(doc)
            spec = _plot_spec(doc, args)
            text = render(spec, _plot_payload(spec, doc, kind), kind)
            status = EXIT_OK
        else:
            doc = _read(args.input)
            kind = tio.resolve_kind(doc)
            result = HANDLERS[args.command](doc, kind, args)
            text = tio.dumps(result)
            status = EXIT_VERIFY_FAILED if args.command == "verify" and not result["ok"] else EXIT_OK
    except (SchemaError, DimensionMismatch, KindMismatch) as exc:
        print(f"tropicon: error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except TropiconError as exc:
        print(f"tropicon: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        # remaining ValueErrors come from malformed instance data
        print(f"tropicon: error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())
