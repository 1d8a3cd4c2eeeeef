"""Command-line front end: one subcommand per library operation.

Handlers only translate flags into library calls and results into rows or
JSON objects.  Every output starts with a provenance record (version, seed
and the complete flag set) and is written in one atomic step.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import __version__, checks, genfunc, qdyck, rmt, scaling
from .errors import SupertreeError
from .pathcount import count_paths, log_count, mean_displacement
from .spectral import charpoly, edge_prediction, monic_hermite, spectral_density
from .supertree import as_number, build_profile, transfer_matrix

SEED_ENV = "SUPERTREES_SEED"
FORMATS = ("csv", "json")


@dataclass
class Output:
    table: tuple | None = None  # (header, rows)
    record: dict | None = None
    failures: list | None = None


def _rational(text: str):
    try:
        return as_number(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or p/q rational: {text!r}") from exc


def _float_list(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else 0


def _text(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (np.floating, float)):
        # strict JSON has no infinities or NaN
        return float(x) if np.isfinite(x) else None
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    return x


# ---------------------------------------------------------------- handlers


def _profile(args):
    return build_profile(args.kind, K=args.K, p0=args.p0, a=args.a, q=getattr(args, "q", None))


def cmd_spectrum(args) -> Output:
    T = transfer_matrix(_profile(args))
    hist = spectral_density(T, args.bins, baseline=args.baseline == "semicircle")
    rows = [(l, r, d, b if args.baseline == "semicircle" else "") for l, r, d, b in hist.rows()]
    record = {
        "K": args.K,
        "lambda_max": float(hist.edges[-1]),
        "histogram": [dict(zip(("bin_left", "bin_right", "density", "baseline"), row)) for row in rows],
    }
    if args.kind == "growing" and args.p0 == 1 and args.a == 1 and args.K >= 10:
        record["edge_prediction"] = edge_prediction(args.K)
    return Output(table=(("bin_left", "bin_right", "density", "baseline"), rows), record=record)


def cmd_hermite(args) -> Output:
    He = monic_hermite(args.K).coeffs
    tm = charpoly(transfer_matrix(build_profile("growing", K=args.K, p0=1, a=1))).coeffs
    record = {"K": args.K, "coefficients": list(He), "transfer_matrix_match": tm == He}
    return Output(table=(("power", "coefficient"), list(enumerate(He))), record=record)


def cmd_paths(args) -> Output:
    prof = _profile(args)
    Z = count_paths(prof, args.N)
    record = {
        "N": args.N,
        "profile": prof.to_dict(),
        "total": str(Z.total),
        "entropy": log_count(Z.total),
        "mean_displacement": mean_displacement(prof, args.N),
    }
    rows = [(args.N, k, z) for k, z in enumerate(Z.counts)]
    return Output(table=(("N", "k", "Z"), rows), record=record)


def cmd_genfunc(args) -> Output:
    if args.mode == "grow":
        gf = genfunc.growing_root_gf(args.K)
    elif args.mode == "desc":
        gf = genfunc.descending_root_gf(args.K)
    else:
        gf = genfunc.to_end_gf(args.K)
    value = gf(args.s)
    record = {
        "mode": args.mode,
        "K": args.K,
        "s": str(args.s),
        "value": float(value),
        "series": gf.series(args.series),
        "pole_estimate": genfunc.pole_estimate(args.K),
    }
    if isinstance(value, (Fraction, int)):
        record["value_exact"] = str(value)
    return Output(record=record)


def cmd_dyck(args) -> Output:
    W = qdyck.dyck_partition(args.N, args.K, q=None if args.symbolic or args.q is None else args.q)
    levels = [w.to_json() if isinstance(w, qdyck.QPolynomial) else w for w in W]
    return Output(record={"N": args.N, "K": args.K, "q": None if args.q is None else str(args.q), "levels": levels})


def cmd_qcatalan(args) -> Output:
    C = qdyck.q_catalan(args.n)
    return Output(record={"n": args.n, "polynomial": C.to_json(), "catalan": C.total()})


def cmd_collapse(args) -> Output:
    z = np.linspace(args.zmin, args.zmax, args.points)
    table = qdyck.edge_collapse(args.q, z, regular=args.regular)
    record = {"rows": table.rows, "deviation": qdyck.collapse_deviation(table), "regular": args.regular}
    return Output(table=(("q", "z", "g"), table.rows), record=record)


def cmd_rmt(args) -> Output:
    spec = rmt.EnsembleSpec(K=args.K, diag_sigma=args.sigma, seed=args.seed, sample_count=args.samples)
    hist = rmt.empirical_density(spec, args.bins)
    rows = list(hist.rows())
    record = {
        "spec": asdict(spec),
        "ks_semicircle": rmt.semicircle_ks(spec),
        "histogram": [dict(zip(("bin_left", "bin_right", "density", "semicircle_baseline"), r)) for r in rows],
    }
    return Output(table=(("bin_left", "bin_right", "density", "semicircle_baseline"), rows), record=record)


def cmd_kpz(args) -> Output:
    sources = scaling.synthetic_sources() if args.synthetic else None
    report = scaling.kpz_pipeline(
        mode=args.mode, kmin=args.kmin, kmax=args.kmax, nmin=args.nmin, nmax=args.nmax, sources=sources
    )
    return Output(record=report)


def cmd_lifshitz(args) -> Output:
    grid = np.geomspace(args.nmin, args.nmax, args.points)
    report = scaling.lifshitz_laplace(args.alpha, grid)
    return Output(record={**asdict(report), "coefficient_error": report.coefficient_error})


def cmd_selftest(args) -> Output:
    results = checks.run_all(seed=args.seed)
    failed = [r for r in results if not r.passed]
    record = {"checks": [asdict(r) for r in results], "passed": not failed}
    return Output(record=record, failures=[f"{r.name}: {r.detail}" for r in failed])


# ---------------------------------------------------------------- parser


def _add_profile_flags(p, kinds=("growing", "descending")):
    p.add_argument("--kind", choices=kinds, default="growing")
    p.add_argument("--p0", type=_rational, default=None)
    p.add_argument("--a", type=_rational, default=None)
    p.add_argument("--K", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supertrees", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, formats=("json",), help=""):
        p = sub.add_parser(name, help=help)
        p.set_defaults(handler=handler, formats=formats)
        p.add_argument(
            "--out",
            default=formats[0],
            metavar="{" + ",".join(formats) + "}|PATH",
            help="output format, or a path ('-' for standard output)",
        )
        p.add_argument("-o", "--output", default=None, help="output path, '-' for standard output")
        return p

    p = command("spectrum", cmd_spectrum, ("csv", "json"), "transfer-matrix spectral density")
    _add_profile_flags(p)
    p.add_argument("--bins", type=int, default=80)
    p.add_argument("--baseline", choices=("semicircle", "none"), default="semicircle")

    p = command("hermite", cmd_hermite, ("json", "csv"), "Hermite coefficients and the transfer-matrix identity")
    p.add_argument("--K", type=int, required=True)

    p = command("paths", cmd_paths, ("csv", "json"), "exact path counts per level")
    _add_profile_flags(p, ("growing", "descending", "dyck_q"))
    p.add_argument("--q", type=_rational, default=None)
    p.add_argument("--N", type=int, required=True)

    p = command("genfunc", cmd_genfunc, ("json",), "generating functions and their series")
    p.add_argument("--mode", choices=("grow", "desc", "to-end"), required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--s", type=_rational, required=True)
    p.add_argument("--series", type=int, default=10)

    p = command("dyck", cmd_dyck, ("json",), "area-weighted Dyck path counts")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--q", type=_rational, default=None)
    group.add_argument("--symbolic", action="store_true")

    p = command("qcatalan", cmd_qcatalan, ("json",), "q-Catalan polynomial")
    p.add_argument("--n", type=int, required=True)

    p = command("collapse", cmd_collapse, ("csv", "json"), "double-scaling collapse table")
    p.add_argument("--q", type=_float_list, default=[0.99, 0.995, 0.9975])
    p.add_argument("--zmin", type=float, default=0.0)
    p.add_argument("--zmax", type=float, default=2.0)
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--regular", choices=("catalan", "constant"), default="catalan")

    p = command("rmt", cmd_rmt, ("csv", "json"), "tridiagonal random-matrix density")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--bins", type=int, default=60)

    p = command("kpz", cmd_kpz, ("json",), "edge, entropy and watermelon exponent fits")
    p.add_argument("--mode", choices=("edge", "entropy", "watermelon", "all"), default="all")
    p.add_argument("--kmin", type=int, default=100)
    p.add_argument("--kmax", type=int, default=3200)
    p.add_argument("--nmin", type=int, default=200)
    p.add_argument("--nmax", type=int, default=2000)
    p.add_argument("--synthetic", action="store_true", help="run on closed-form data")

    p = command("lifshitz", cmd_lifshitz, ("json",), "stretched-exponential Laplace pair")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--nmin", type=float, default=1e2)
    p.add_argument("--nmax", type=float, default=1e5)
    p.add_argument("--points", type=int, default=13)

    p = command("selftest", cmd_selftest, ("json",), "identity and oracle checks")
    p.add_argument("--seed", type=int, default=None)
    return parser


# ---------------------------------------------------------------- output


def _render_csv(table, provenance) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(provenance, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    header, rows = table
    writer.writerow(header)
    for row in rows:
        writer.writerow([_text(x) for x in row])
    return buf.getvalue()


def _render_json(record, provenance) -> str:
    return json.dumps(_jsonable({"provenance": provenance, **record}), indent=2) + "\n"


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".supertrees-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _resolve_destination(args, parser) -> tuple[str, str]:
    fmt, path = args.formats[0], args.output or "-"
    if args.out in FORMATS:
        fmt = args.out
    else:
        if args.output is not None:
            parser.error("--out PATH and --output PATH are both given")
        path = args.out
        ext = os.path.splitext(path)[1].lstrip(".").lower()
        if ext in FORMATS:
            fmt = ext
    if fmt not in args.formats:
        parser.error(f"{args.command} does not produce {fmt} output (choose from {', '.join(args.formats)})")
    return fmt, path


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        fmt, path = _resolve_destination(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "seed") and args.seed is None:
        try:
            args.seed = _default_seed()
        except ValueError:
            print(f"error: {SEED_ENV} must be an integer", file=sys.stderr)
            return 2

    flags = {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k not in ("handler", "formats")}
    provenance = {"tool": "supertrees", "version": __version__, "seed": getattr(args, "seed", None), "flags": flags}
    try:
        result = args.handler(args)
    except (SupertreeError, ArithmeticError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    text = _render_csv(result.table, provenance) if fmt == "csv" else _render_json(result.record, provenance)
    _write(text, path)
    if result.failures:
        for line in result.failures:
            print(f"FAILED {line}", file=sys.stderr)
        return 1
    return 0
