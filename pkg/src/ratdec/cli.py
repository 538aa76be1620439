"""Command-line front end: analyze, certify, nev.

Exit codes: 0 success (certify: at least one certificate), 1 certify
found no certificate, 2 parse/configuration error, 3 quadrature failure.
All outputs are deterministic: identical inputs and flags produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import cmath
import json
import os
import random
import sys

from .scalars import DEFAULT_PRECISION
from .expr import (
    EXPR_GRAMMAR_VERSION,
    MERO_GRAMMAR_VERSION,
    ParseError,
    format_ratfun,
    parse_ratfun,
)
from .conditions import (
    FiberCertificationError,
    FiberDegreeError,
    check_conditions,
    verify_fibers,
)
from .certificates import (
    evaluate_all,
    evaluate_entire,
    evaluate_meromorphic,
    evaluate_meromorphic_strict,
)
from . import nevanlinna as nev
from .nevanlinna import QuadratureError

EXIT_OK = 0
EXIT_NO_CERTIFICATE = 1
EXIT_PARSE = 2
EXIT_QUADRATURE = 3


def _usage_error(message: str):
    print(message, file=sys.stderr)
    raise SystemExit(EXIT_PARSE)


def _default_precision() -> int:
    env = os.environ.get("RATDEC_PRECISION")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            _usage_error(f"RATDEC_PRECISION must be an integer, got {env!r}")
    return DEFAULT_PRECISION


def _check_precision(bits: int) -> int:
    if bits < 64:
        _usage_error("precision must be at least 64 bits")
    return bits


def _parse_radii(text: str):
    """Grid format start:stop:count[:spacing], spacing linear (default) or log."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        _usage_error(
            f"radius grid must be start:stop:count[:spacing], got {text!r}"
        )
    try:
        start = float(parts[0])
        stop = float(parts[1])
        count = int(parts[2])
    except ValueError:
        _usage_error(f"bad radius grid numbers in {text!r}")
    spacing = parts[3] if len(parts) == 4 else "linear"
    if spacing not in ("linear", "log"):
        _usage_error(f"spacing must be linear or log, got {spacing!r}")
    if count < 1 or start <= 0 or stop <= start:
        _usage_error("radius grid needs 0 < start < stop and count >= 1")
    if count == 1:
        return [start]
    if spacing == "linear":
        step = (stop - start) / (count - 1)
        return [start + step * i for i in range(count)]
    import math

    lstart, lstop = math.log(start), math.log(stop)
    step = (lstop - lstart) / (count - 1)
    return [math.exp(lstart + step * i) for i in range(count)]


def _parse_targets(text: str):
    """Comma-separated complex targets; 'i' notation accepted."""
    out = []
    for token in text.split(","):
        token = token.strip().replace("i", "j")
        if not token:
            continue
        try:
            out.append(complex(token))
        except ValueError:
            _usage_error(f"bad target value {token!r}")
    return out


def _load_ratfun(text: str, label: str):
    try:
        return parse_ratfun(text)
    except ParseError as e:
        print(
            f"parse error in {label} at line {e.line}, column {e.column}: {e.message}",
            file=sys.stderr,
        )
        raise SystemExit(EXIT_PARSE)


def _load_mero(text: str, label: str):
    try:
        return nev.mero(text)
    except ParseError as e:
        print(
            f"parse error in {label} at line {e.line}, column {e.column}: {e.message}",
            file=sys.stderr,
        )
        raise SystemExit(EXIT_PARSE)


def _write(out_dir: str, name: str, content: str):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)
    return path


def _wants(args, kind: str) -> bool:
    fmt = getattr(args, "format", "all")
    return fmt in (kind, "all")


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    F = _load_ratfun(args.F, "F")
    G = _load_ratfun(args.G, "G")
    precision = _check_precision(args.precision)
    report = check_conditions(F, G, args.variant, precision)
    fiber_info = None
    fiber_lines = []
    if report.k >= 1:
        try:
            fiber = verify_fibers(F, G, report, precision)
            fiber_info = fiber.to_json_dict()
            fiber_lines.append(
                f"fiber verification: certified {fiber.q * fiber.k} pairwise "
                f"distinct roots ({fiber.q} per value)"
            )
        except (FiberDegreeError, FiberCertificationError) as e:
            fiber_info = {"error": str(e)}
            fiber_lines.append(f"fiber verification failed: {e}")

    payload = {
        "grammar": EXPR_GRAMMAR_VERSION,
        "F": format_ratfun(F),
        "G": format_ratfun(G),
        "variant": args.variant,
        "precision": precision,
        "report": report.to_json_dict(),
        "fiber_verification": fiber_info,
    }
    text_lines = [
        f"F = {format_ratfun(F)}",
        f"G = {format_ratfun(G)}",
        f"variant: {args.variant}   precision: {precision} bits",
        f"trace: {report.trace}",
        f"k = {report.k}",
    ]
    for rec in report.admissible:
        v = rec.value_ball.as_strings(8)
        w = rec.witness.location.as_strings(8)
        text_lines.append(
            f"  admissible value near ({v['re']}, {v['im']}) with witness near "
            f"({w['re']}, {w['im']}), vanishing order {rec.witness.multiplicity_s}"
        )
    for exc in report.exclusions:
        where = ""
        if exc.ball is not None:
            eb = exc.ball.as_strings(8)
            where = f" near ({eb['re']}, {eb['im']})"
        note = f" ({exc.note})" if exc.note else ""
        text_lines.append(f"  excluded{where}: {exc.reason}{note}")
    text_lines.extend(fiber_lines)
    text = "\n".join(text_lines) + "\n"

    print(text, end="")
    if args.out:
        if _wants(args, "json"):
            _write(args.out, "analyze.json", json.dumps(payload, indent=2) + "\n")
        if _wants(args, "text"):
            _write(args.out, "analyze.txt", text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


def cmd_certify(args) -> int:
    F = _load_ratfun(args.F, "F")
    G = _load_ratfun(args.G, "G")
    precision = _check_precision(args.precision)
    if args.symmetric:
        evals = evaluate_all(F, G, symmetric=True, precision=precision).evaluations
    elif args.model == "entire":
        evals = [evaluate_entire(F, G, precision)]
    elif args.model == "meromorphic":
        evals = [
            evaluate_meromorphic(F, G, precision),
            evaluate_meromorphic_strict(F, G, precision),
        ]
    else:
        evals = evaluate_all(F, G, symmetric=False, precision=precision).evaluations

    lines = [f"F = {format_ratfun(F)}", f"G = {format_ratfun(G)}"]
    certs = []
    for ev in evals:
        tag = " (swapped)" if ev.swapped else ""
        status = "CERTIFICATE" if ev.certificate else "no certificate"
        note = f"   [{ev.note}]" if ev.note else ""
        lines.append(f"{ev.theorem}{tag}: {ev.inequality} -> {status}{note}")
        if ev.certificate:
            certs.append(ev)
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if args.out:
        if _wants(args, "text"):
            _write(args.out, "bounds.txt", text)
        if _wants(args, "json"):
            for ev in certs:
                suffix = "-swapped" if ev.swapped else ""
                _write(
                    args.out,
                    f"certificate-{ev.theorem}{suffix}.json",
                    ev.to_canonical_json() + "\n",
                )
    if certs:
        for ev in certs:
            print(ev.to_canonical_json())
        return EXIT_OK
    return EXIT_NO_CERTIFICATE


# ---------------------------------------------------------------------------
# nev
# ---------------------------------------------------------------------------


def _filtered_samples(count, radius, seed, exprs, min_clearance):
    """Deterministic random samples in |z| <= radius, dropping points where
    any supplied function evaluates non-finite or above 1/min_clearance."""
    rng = random.Random(seed)
    cap = 1.0 / min_clearance
    samples = []
    attempts = 0
    while len(samples) < count and attempts < 50 * count:
        attempts += 1
        z = complex(
            rng.uniform(-radius, radius), rng.uniform(-radius, radius)
        )
        if abs(z) > radius:
            continue
        ok = True
        for h in exprs:
            v = nev.evaluate(h, z)
            if not cmath.isfinite(v) or abs(v) > cap:
                ok = False
                break
        if ok:
            samples.append(z)
    if len(samples) < count:
        _usage_error("could not draw enough pole-avoiding samples")
    return samples


def cmd_nev(args) -> int:
    radii = _parse_radii(args.radii) if args.radii else None
    targets = _parse_targets(args.targets) if args.targets else []
    try:
        if args.check == "table":
            h = _load_mero(args.expr, "--expr")
            if radii is None:
                _usage_error("--radii is required for --check table")
            table = nev.characteristic_T(h, radii, args.tol, targets)
            config = {
                "grammar": MERO_GRAMMAR_VERSION,
                "radii": args.radii,
                "tol": args.tol,
                "targets": args.targets or "",
            }
            csv_text = table.to_csv(config)
            print(
                f"T({table.radii[-1]:.6g}) = {table.T[-1]:.9g}   "
                f"m = {table.m[-1]:.9g}   N = {table.N[-1]:.9g}"
            )
            if args.out:
                if _wants(args, "csv"):
                    _write(args.out, "table.csv", csv_text)
                if _wants(args, "svg"):
                    svg = nev.render_svg(
                        [("T(r)", table.radii, table.T)],
                        f"characteristic of {table.function}",
                        "r",
                        "T(r)",
                    )
                    _write(args.out, "T.svg", svg)
            return EXIT_OK

        if args.check == "second-main":
            h = _load_mero(args.expr, "--expr")
            if radii is None or not targets:
                _usage_error(
                    "--radii and --targets are required for --check second-main"
                )
            verdict = nev.check_second_main(h, targets, radii, args.tol)
            print(
                f"second-main residual check: {'PASS' if verdict.passed else 'FAIL'} "
                f"({verdict.policy})"
            )
            if args.out:
                if _wants(args, "json"):
                    _write(
                        args.out,
                        "verdict.json",
                        json.dumps(verdict.to_json_dict(), indent=2) + "\n",
                    )
                if _wants(args, "csv"):
                    _write(args.out, "table.csv", verdict.table.to_csv(
                        {"grammar": MERO_GRAMMAR_VERSION, "radii": args.radii,
                         "tol": args.tol, "targets": args.targets}
                    ))
                if _wants(args, "svg"):
                    ratio = [
                        res / ref
                        for res, ref in zip(verdict.residuals, verdict.reference)
                    ]
                    svg = nev.render_svg(
                        [
                            ("residual/T", verdict.radii, ratio),
                        ],
                        "second-main residual ratio",
                        "r",
                        "residual / T",
                    )
                    _write(args.out, "residuals.svg", svg)
            return EXIT_OK

        if args.check == "growth":
            if not args.outer or not args.base or radii is None:
                _usage_error(
                    "--outer, --base and --radii are required for --check growth"
                )
            R = _load_ratfun(args.outer, "--outer")
            base = _load_mero(args.base, "--base")
            verdict = nev.check_degree_growth(R, base, radii, args.tol)
            print(
                f"degree-growth check: {'PASS' if verdict.passed else 'FAIL'} "
                f"({verdict.policy})"
            )
            if args.out:
                if _wants(args, "json"):
                    _write(
                        args.out,
                        "verdict.json",
                        json.dumps(verdict.to_json_dict(), indent=2) + "\n",
                    )
                if _wants(args, "svg"):
                    svg = nev.render_svg(
                        [
                            (
                                "ratio - deg R",
                                verdict.radii,
                                verdict.residuals,
                            )
                        ],
                        "degree growth of T under composition",
                        "r",
                        "T-ratio residual",
                    )
                    _write(args.out, "growth.svg", svg)
            return EXIT_OK

        if args.check == "identity":
            for needed in ("F", "G", "f", "g"):
                if getattr(args, "id_" + needed) is None:
                    _usage_error(
                        "--F, --G, --f and --g are required for --check identity"
                    )
            F = _load_ratfun(args.id_F, "--F")
            G = _load_ratfun(args.id_G, "--G")
            f = _load_mero(args.id_f, "--f")
            g = _load_mero(args.id_g, "--g")
            samples = _filtered_samples(
                args.samples, args.sample_radius, args.seed, (f, g),
                args.min_clearance,
            )
            report = None
            try:
                rep = check_conditions(F, G, "M", _check_precision(args.precision))
                if rep.k >= 1:
                    report = rep
            except ValueError:
                report = None
            result = nev.check_composition_identity(
                F, G, f, g, samples, args.tol, report
            )
            print(
                f"composition identity: {'PASS' if result.passed else 'FAIL'}   "
                f"max deviation {result.max_deviation:.3e} over "
                f"{result.samples_used} samples ({result.samples_skipped} skipped)"
            )
            if result.middle_max_deviation is not None:
                print(
                    f"factored middle forms: max deviation "
                    f"{result.middle_max_deviation:.3e}"
                )
            if args.out and _wants(args, "json"):
                _write(
                    args.out,
                    "identity.json",
                    json.dumps(result.to_json_dict(), indent=2) + "\n",
                )
            return EXIT_OK

        _usage_error(f"unknown check {args.check!r}")
        return EXIT_PARSE
    except QuadratureError as e:
        print(f"quadrature failure: {e}", file=sys.stderr)
        if e.worst_interval is not None:
            print(
                f"worst panel: theta in [{e.worst_interval[0]:.6f}, "
                f"{e.worst_interval[1]:.6f}] at r = {e.radius}",
                file=sys.stderr,
            )
        return EXIT_QUADRATURE
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_PARSE


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratdec",
        description=(
            "exact admissibility analysis, non-decomposability certificates, "
            "and numerical value-distribution checks for rational pairs"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="condition analysis of a pair F, G")
    pa.add_argument("F")
    pa.add_argument("G")
    pa.add_argument("--variant", choices=("M", "M-prime"), default="M")
    pa.add_argument("--precision", type=int, default=_default_precision())
    pa.add_argument("--out", default=None)
    pa.add_argument(
        "--format", choices=("json", "text", "all"), default="all"
    )
    pa.set_defaults(func=cmd_analyze)

    pc = sub.add_parser("certify", help="evaluate degree bounds, emit certificates")
    pc.add_argument("F")
    pc.add_argument("G")
    pc.add_argument(
        "--model", choices=("entire", "meromorphic", "all"), default="all"
    )
    pc.add_argument("--symmetric", action="store_true")
    pc.add_argument("--precision", type=int, default=_default_precision())
    pc.add_argument("--out", default=None)
    pc.add_argument(
        "--format", choices=("json", "text", "all"), default="all"
    )
    pc.set_defaults(func=cmd_certify)

    pn = sub.add_parser("nev", help="numerical value-distribution lab")
    pn.add_argument(
        "--check",
        choices=("table", "second-main", "growth", "identity"),
        default="table",
    )
    pn.add_argument("--expr", default=None, help="mero expression, e.g. 'tan'")
    pn.add_argument("--targets", default=None, help="comma-separated, e.g. '0,1'")
    pn.add_argument("--radii", default=None, help="start:stop:count[:spacing]")
    pn.add_argument("--tol", type=float, default=1e-6)
    pn.add_argument("--outer", default=None, help="rational map for --check growth")
    pn.add_argument("--base", default=None, help="mero base for --check growth")
    pn.add_argument("--F", dest="id_F", default=None)
    pn.add_argument("--G", dest="id_G", default=None)
    pn.add_argument("--f", dest="id_f", default=None)
    pn.add_argument("--g", dest="id_g", default=None)
    pn.add_argument("--samples", type=int, default=1000)
    pn.add_argument("--sample-radius", type=float, default=3.0)
    pn.add_argument("--seed", type=int, default=20240901)
    pn.add_argument(
        "--min-clearance",
        type=float,
        default=1e-2,
        help="drop samples where |f| or |g| exceeds 1/this (pole-adjacent)",
    )
    pn.add_argument("--precision", type=int, default=_default_precision())
    pn.add_argument("--out", default=None)
    pn.add_argument(
        "--format", choices=("json", "csv", "svg", "all"), default="all"
    )
    pn.set_defaults(func=cmd_nev)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", None) is not None and args.tol <= 0:
        print("tolerance must be positive", file=sys.stderr)
        return EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
