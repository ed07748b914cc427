"""Command-line entry point.

Exit codes: 0 success, 1 usage or parse error, 2 size cap exceeded,
3 a stability check or self-test failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .complex import vietoris_rips
from .config import CapExceededError, RunConfig
from .distances import bottleneck, interleaving_via_isometry
from .hochster import betti_csv, betti_table
from .io import BarcodeDocument, InputError, read_space
from .metric import gromov_hausdorff, gromov_hausdorff_bijective
from .persistence import persistent_homology, phhz, phz
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_FAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for cap errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def _config(args) -> RunConfig:
    kw = {"field": args.field, "vertex_cap": args.cap}
    if getattr(args, "threads", None):
        kw["threads"] = args.threads
    return RunConfig(**kw)


def compute_barcode(X, mode: str, cfg: RunConfig):
    if mode == "ph":
        return persistent_homology(X, cfg.field, cfg.vertex_cap)
    if mode == "phz":
        return phz(X, cfg.field, cfg.vertex_cap, threads=cfg.threads)
    return phhz(X, cfg.field, cfg.vertex_cap)


def cmd_barcode(args) -> int:
    cfg = _config(args)
    X, digest = read_space(args.input, args.matrix)
    B = compute_barcode(X, args.mode, cfg)
    prov = {"input_sha256": digest, "input_format": "matrix" if args.matrix else "points",
            "mode": args.mode, "field": cfg.field, "vertex_cap": cfg.vertex_cap,
            "tolerance": cfg.tolerance, "tool_version": __version__}
    doc = BarcodeDocument.from_barcode(B, prov)
    if args.out:
        doc.save(args.out)
    else:
        sys.stdout.write(doc.dumps())
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(B))
    return EXIT_OK


def cmd_distance(args) -> int:
    A = BarcodeDocument.load(args.a).to_barcode()
    B = BarcodeDocument.load(args.b).to_barcode()
    if A.kind != B.kind:
        raise UsageError(f"cannot compare a {A.kind} barcode with a {B.kind} barcode")
    graded = not args.ungraded
    if args.kind == "interleaving":
        d = interleaving_via_isometry(A, B, grade_matched=graded)
    else:
        d = bottleneck(A, B, grade_matched=graded)
    print(_fmt(d))
    return EXIT_OK


def cmd_gh(args) -> int:
    X, _ = read_space(args.a, args.matrix)
    Y, _ = read_space(args.b, args.matrix)
    if args.mode == "bijective":
        if X.n != Y.n:
            raise UsageError(f"bijective mode needs equal sizes, got {X.n} and {Y.n}")
        d = gromov_hausdorff_bijective(X, Y)
    else:
        d = gromov_hausdorff(X, Y)
    print(_fmt(d))
    return EXIT_OK


def stability_pair(X, Y, mode: str, cfg: RunConfig):
    """``(lhs, rhs, ok)`` for the stability inequality of ``mode`` on one pair."""
    if mode == "phz":
        if X.n != Y.n:
            raise UsageError(f"phz stability compares spaces of equal size, got {X.n} and {Y.n}")
        rhs = 2 * gromov_hausdorff_bijective(X, Y)
    else:
        rhs = 2 * gromov_hausdorff(X, Y)
    lhs = interleaving_via_isometry(compute_barcode(X, mode, cfg), compute_barcode(Y, mode, cfg))
    return lhs, rhs, lhs <= rhs + cfg.tolerance


def cmd_stability(args) -> int:
    cfg = _config(args)
    X, _ = read_space(args.a, args.matrix)
    Y, _ = read_space(args.b, args.matrix)
    lhs, rhs, ok = stability_pair(X, Y, args.mode, cfg)
    gh = "2*d'_GH" if args.mode == "phz" else "2*d_GH"
    print(f"{'PASS' if ok else 'FAIL'} W_inf({args.mode}) = {_fmt(lhs)} <= {gh} = {_fmt(rhs)}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_betti(args) -> int:
    cfg = _config(args)
    X, _ = read_space(args.input, args.matrix)
    sys.stdout.write(betti_csv(betti_table(vietoris_rips(X, args.t), cfg.field, cfg.vertex_cap)))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .harness import CHECKS, RandomModel, run_property_suite
    cfg = _config(args)
    checks = args.checks.split(",") if args.checks else None
    if checks and set(checks) - set(CHECKS):
        raise UsageError(f"unknown checks; choose from {','.join(CHECKS)}")
    model = RandomModel(seed=args.seed, eps=args.eps)
    report = run_property_suite(model, args.trials, cfg.field, checks, threads=cfg.threads)
    for line in report.lines():
        print(line)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r._asdict() for r in report.results], fh, indent=2)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bgph", description="Bigraded persistent (double) homology of finite metric spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, threads=True):
        p.add_argument("--field", type=int, default=2, help="prime field characteristic (default 2)")
        p.add_argument("--cap", type=int, default=20, help="maximum number of points (default 20)")
        if threads:
            p.add_argument("--threads", type=int, default=None, help="worker threads (default: BGPH_THREADS or 1)")

    p = sub.add_parser("barcode", help="compute a barcode")
    p.add_argument("--input", required=True)
    p.add_argument("--matrix", action="store_true", help="input is a distance matrix, not coordinates")
    p.add_argument("--mode", choices=("ph", "phz", "phhz"), required=True)
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.add_argument("--svg", help="also render the barcode as SVG")
    common(p)
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("distance", help="bottleneck distance between two barcode documents")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--kind", choices=("bottleneck", "interleaving"), default="bottleneck")
    p.add_argument("--ungraded", action="store_true", help="allow bars of different grades to match")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("gh", help="Gromov-Hausdorff distance")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--matrix", action="store_true")
    p.add_argument("--mode", choices=("exact", "bijective"), default="exact")
    p.set_defaults(func=cmd_gh)

    p = sub.add_parser("stability", help="check a stability inequality on one pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--matrix", action="store_true")
    p.add_argument("--mode", choices=("phz", "phhz"), required=True)
    common(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("betti", help="bigraded Betti table of the Rips complex at one scale, as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--matrix", action="store_true")
    p.add_argument("--t", type=float, required=True)
    common(p, threads=False)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("selftest", help="run the randomised property suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--checks", help="comma-separated subset of checks")
    p.add_argument("--json", help="write per-trial results here")
    common(p)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"bgph: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, InputError, ValueError, OSError) as exc:
        print(f"bgph: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
