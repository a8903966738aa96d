"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .bounds import (Measure, MeasureSpec, entropy_bounds_at_norm,
                     measure_bounds_at_entropy, renyi_divergence_bounds)
from .channel import classify, e0_bounds, gallager_e0, load_channel
from .errors import EntropyExtremesError, ShannonOrderUnsupported
from .region import XAxis, boundary_curves, emit_csv, emit_json
from .simplex import Order, parse_probvec, uniform
from .verify import run_verification

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
LN2 = math.log(2.0)
DIVERGENCE = "renyi-divergence"
MEASURE_CHOICES = [m.value for m in Measure] + [DIVERGENCE]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _order_arg(text: str) -> Order:
    try:
        return Order.of(text)
    except (ValueError, EntropyExtremesError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _require_not_shannon(order: Order) -> None:
    if order.is_shannon:
        raise ShannonOrderUnsupported(
            "order 1 is excluded: every distribution has 1-norm equal to 1, so "
            "the bounds carry no information; pick an order in (0, 1) or (1, inf)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="entropy-extremes",
                description="Tight bounds between Shannon entropy and alpha-norms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", help="bracket a measure of one distribution")
    b.add_argument("--dist", required=True,
                   help="JSON list, CSV row, or a file holding either")
    b.add_argument("--measure", required=True, choices=MEASURE_CHOICES)
    b.add_argument("--order", required=True, type=_order_arg)
    b.add_argument("--fix", choices=["entropy", "norm"], default="entropy",
                   help="hold the Shannon entropy (default) or the alpha-norm fixed")
    b.add_argument("--bits", action="store_true", help="report entropies in bits")

    r = sub.add_parser("region", help="write boundary curves")
    r.add_argument("--n", required=True, type=int)
    r.add_argument("--measure", choices=[m.value for m in Measure])
    r.add_argument("--order", type=_order_arg)
    r.add_argument("--out", required=True)
    r.add_argument("--x-axis", choices=[a.value for a in XAxis],
                   default=XAxis.SHANNON_ENTROPY.value)
    r.add_argument("--rho", type=float)
    r.add_argument("--resolution", type=int, default=512)
    r.add_argument("--json", action="store_true", help="write the JSON mirror instead of CSV")

    c = sub.add_parser("channel", help="analyse a channel matrix")
    c.add_argument("--matrix", required=True, help="JSON or CSV file")
    mode = c.add_mutually_exclusive_group(required=True)
    mode.add_argument("--classify", action="store_true")
    mode.add_argument("--e0", action="store_true")
    mode.add_argument("--e0-bounds", action="store_true")
    c.add_argument("--rho", type=float)
    c.add_argument("--bits", action="store_true")

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("--n", required=True, type=int)
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--threads", type=int)
    v.add_argument("--tolerance", type=float, default=1e-9)
    v.add_argument("--json", action="store_true")
    return p


def _read_dist(text: str):
    path = Path(text)
    try:
        if path.is_file():
            text = path.read_text()
    except OSError:
        pass
    return parse_probvec(text.strip())


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")


def _scale_report(doc: dict, factor: float) -> dict:
    for key in ("value", "lower", "upper"):
        doc[key] = doc[key] / factor
    doc["unit"] = "bits"
    return doc


def _cmd_bound(args) -> int:
    p = _read_dist(args.dist)
    order: Order = args.order
    _require_not_shannon(order)
    in_nats = False
    if args.fix == "norm":
        if args.measure != Measure.ALPHA_NORM.value:
            raise UsageError("--fix norm brackets the Shannon entropy; use --measure alpha-norm")
        report = entropy_bounds_at_norm(p, order)
        in_nats = True
    elif args.measure == DIVERGENCE:
        report = renyi_divergence_bounds(p, order)
        in_nats = True
    else:
        spec = MeasureSpec(Measure(args.measure), order)
        report = measure_bounds_at_entropy(p, spec)
        in_nats = spec.name is Measure.RENYI
    doc = report.to_dict()
    if args.bits:
        if not in_nats:
            raise UsageError(f"--bits applies to entropies, not {report.measure_name}")
        doc = _scale_report(doc, LN2)
    _emit(doc)
    return EXIT_OK


def _cmd_region(args) -> int:
    axis = XAxis(args.x_axis)
    spec = None
    if axis is not XAxis.MUTUAL_INFORMATION:
        if args.measure is None or args.order is None:
            raise UsageError(f"--measure and --order are required for the {axis.value} axis")
        _require_not_shannon(args.order)
        spec = MeasureSpec(Measure(args.measure), args.order)
    curves = boundary_curves(args.n, spec, axis, args.resolution, args.rho)
    (emit_json if args.json else emit_csv)(list(curves), args.out)
    return EXIT_OK


def _cmd_channel(args) -> int:
    ch = load_channel(args.matrix)
    if args.classify:
        _emit(classify(ch).to_dict())
        return EXIT_OK
    if args.rho is None:
        raise UsageError("--rho is required with --e0 and --e0-bounds")
    scale = LN2 if args.bits else 1.0
    if args.e0:
        doc = {"rho": args.rho, "e0": gallager_e0(ch, uniform(ch.input_size), args.rho) / scale}
    else:
        doc = e0_bounds(ch, args.rho).to_dict()
        doc["rho"] = args.rho
        if args.bits:
            doc = _scale_report(doc, scale)
    if args.bits:
        doc["unit"] = "bits"
    _emit(doc)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = run_verification(args.n, args.samples, args.seed, args.threads, args.tolerance)
    sys.stdout.write((report.to_json() if args.json else report.to_text()) + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


COMMANDS = {"bound": _cmd_bound, "region": _cmd_region,
            "channel": _cmd_channel, "verify": _cmd_verify}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, EntropyExtremesError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"entropy-extremes {args.command}: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
