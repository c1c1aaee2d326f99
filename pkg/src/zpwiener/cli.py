"""Command-line surface.

Commands: eval, verify, reduce, scan, dim, energy.
Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 budget error.
All randomness flows from --seed, so identical invocations produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import DEFAULT_CONFIG, ToolConfig
from .energy import additive_dimension, t_k_direct, t_k_spectral
from .errors import BudgetError, FileFormatError
from .fileio import (
    dump_records,
    read_function_file,
    report_header,
    write_report_file,
    write_scan_csv,
)
from .fourier import dft, wiener_norm
from .reduction import (
    find_balanced_line,
    find_separating_map,
    pushforward,
    rescale_to_short_interval,
    restrict_to_line,
)
from .verify import CHECKS, ap_scan, random_set_scan, run_suite


def _config_from(args) -> ToolConfig:
    overrides = {}
    if getattr(args, "budget", None) is not None:
        overrides["dense_budget"] = args.budget
    if getattr(args, "tolerance", None) is not None:
        overrides["norm_tol"] = args.tolerance
        overrides["energy_tol"] = args.tolerance
    if overrides:
        from dataclasses import replace

        return replace(DEFAULT_CONFIG, **overrides)
    return DEFAULT_CONFIG


def _emit(records, output) -> None:
    if output:
        write_report_file(output, records)
    else:
        sys.stdout.write(dump_records(records))


def cmd_eval(args) -> int:
    cfg = _config_from(args)
    f = read_function_file(args.input)
    if not len(f):
        print("warning: function has empty support", file=sys.stderr)
        print("wiener_norm 0.000000000000")
        return 0
    spec = dft(f, method=args.method, budget=cfg.dense_budget)
    print(f"wiener_norm {spec.l1:.12f}")
    print(f"support {f.support_size}  max_abs {f.max_abs:.12g}  l2 {f.l2_norm:.12g}")
    if args.spectrum:
        records = [report_header(__version__, {"input": args.input})]
        for xi in sorted(f.ctx.points()):
            c = spec[xi]
            records.append(
                {"record": "coefficient", "xi": list(xi), "re": c.real, "im": c.imag}
            )
        write_report_file(args.spectrum, records)
    return 0


def cmd_verify(args) -> int:
    cfg = _config_from(args)
    if args.suite != "all" and args.suite not in CHECKS:
        print(f"error: unknown suite {args.suite!r}; known: {sorted(CHECKS)} or 'all'",
              file=sys.stderr)
        return 2
    reports = run_suite(args.suite, seed=args.seed, count=args.count, config=cfg)
    records = [
        report_header(
            __version__,
            {"suite": args.suite, "seed": args.seed, "count": args.count,
             "tolerance": args.tolerance},
        )
    ]
    records.extend(r.as_record() for r in reports)
    _emit(records, args.output)
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def cmd_reduce(args) -> int:
    cfg = _config_from(args)
    f = read_function_file(args.input)
    records = [
        report_header(
            __version__, {"mode": args.mode, "input": args.input, "seed": args.seed}
        )
    ]
    if args.mode == "line":
        result = find_balanced_line(
            f.support, f.ctx, min_density_const=args.min_density_const
        )
        for step in result.steps:
            records.append(
                {
                    "record": "balance",
                    "eta": list(step.found.eta),
                    "u": step.found.u,
                    "count": step.count,
                    "target": step.target,
                    "deviation": step.deviation,
                    "bound": step.bound,
                    "theta": step.theta,
                }
            )
        restricted = restrict_to_line(f, result.line)
        before, after = wiener_norm(f), wiener_norm(restricted)
        records.append(
            {
                "record": "line",
                "direction": list(result.line.direction),
                "base": list(result.line.base),
                "count": result.count,
                "base_density": result.base_density,
                "line_density": result.line_density,
                "composed_bound": result.composed_bound,
                "norm_before": before,
                "norm_after": after,
            }
        )
        print(f"norm_before {before:.12f}  norm_after {after:.12f}")
    elif args.mode == "separating-map":
        sep = find_separating_map(f.support, f.ctx)
        h = pushforward(f, sep.map)
        before, after = wiener_norm(f), wiener_norm(h)
        records.append(
            {
                "record": "separating-map",
                "matrix": [list(row) for row in sep.map.matrix],
                "row": list(sep.row),
                "first_coords": list(sep.first_coords),
                "norm_before": before,
                "norm_after": after,
            }
        )
        print(f"norm_before {before:.12f}  norm_after {after:.12f}")
    elif args.mode == "dirichlet":
        if f.ctx.d != 1:
            print("error: dirichlet mode needs a d = 1 input", file=sys.stderr)
            return 2
        rescaled = rescale_to_short_interval(f, scan_cap=cfg.q_scan_cap)
        before, after = wiener_norm(f), wiener_norm(rescaled.function)
        records.append(
            {
                "record": "dirichlet",
                "q": rescaled.q,
                "max_abs": rescaled.rescaling.max_abs,
                "bound": rescaled.rescaling.bound,
                "support_signed": list(rescaled.support_signed),
                "within_third": rescaled.within_third,
                "norm_before": before,
                "norm_after": after,
            }
        )
        print(f"q {rescaled.q}")
        print(f"norm_before {before:.12f}  norm_after {after:.12f}")
    else:  # pragma: no cover - argparse restricts choices
        return 2
    _emit(records, args.output)
    return 0


def cmd_scan(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        print("error: --sizes must list at least one integer", file=sys.stderr)
        return 2
    if args.kind == "ap":
        rows = ap_scan(args.p, sizes, method=args.method)
    else:
        rows = random_set_scan(args.p, sizes, seed=args.seed, method=args.method)
    if args.output:
        write_scan_csv(args.output, rows)
    else:
        sys.stdout.write(",".join(["p", "size", "structure", "wiener_norm", "log_size", "ratio"]) + "\n")
        for row in rows:
            ratio = "" if row.ratio is None else f"{row.ratio:.17g}"
            sys.stdout.write(
                f"{row.p},{row.size},{row.structure},{row.wiener_norm:.17g},{row.log_size:.17g},{ratio}\n"
            )
    return 0


def cmd_dim(args) -> int:
    f = read_function_file(args.input)
    value, subset = additive_dimension(f.support, f.ctx, mode=args.mode)
    print(f"dim {value}  mode {args.mode}")
    print("subset " + " ".join("(" + ",".join(map(str, x)) + ")" for x in subset))
    return 0


def cmd_energy(args) -> int:
    cfg = _config_from(args)
    f = read_function_file(args.input)
    if args.method in ("direct", "both"):
        print(f"t{args.k}_direct {t_k_direct(f, args.k, op_budget=cfg.op_budget):.12g}")
    if args.method in ("spectral", "both"):
        print(f"t{args.k}_spectral {t_k_spectral(f, args.k, budget=cfg.dense_budget):.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zpwiener",
        description="Wiener norms, additive energies, and reductions over Z_p^d",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="Wiener norm and spectrum summary of a function file")
    p_eval.add_argument("input")
    p_eval.add_argument("--spectrum", help="write the full spectrum to this report file")
    p_eval.add_argument("--method", choices=["auto", "naive", "fast"], default="auto")
    p_eval.add_argument("--budget", type=int)
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="run a named check suite (or all)")
    p_verify.add_argument("suite")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--count", type=int, default=50)
    p_verify.add_argument("--tolerance", type=float)
    p_verify.add_argument("--output")
    p_verify.set_defaults(func=cmd_verify)

    p_reduce = sub.add_parser("reduce", help="run a reduction on a function file")
    p_reduce.add_argument("mode", choices=["line", "separating-map", "dirichlet"])
    p_reduce.add_argument("--input", required=True)
    p_reduce.add_argument("--output")
    p_reduce.add_argument("--seed", type=int, default=0)
    p_reduce.add_argument("--min-density-const", type=float, default=None,
                          help="override the density hypothesis constant for line mode")
    p_reduce.set_defaults(func=cmd_reduce)

    p_scan = sub.add_parser("scan", help="Wiener-norm growth scan to CSV")
    p_scan.add_argument("kind", choices=["ap", "random"])
    p_scan.add_argument("--p", type=int, required=True)
    p_scan.add_argument("--sizes", required=True, help="comma-separated list")
    p_scan.add_argument("--seed", type=int, default=0)
    p_scan.add_argument("--method", choices=["auto", "naive", "fast"], default="auto")
    p_scan.add_argument("--output")
    p_scan.set_defaults(func=cmd_scan)

    p_dim = sub.add_parser("dim", help="additive dimension of a file's support")
    p_dim.add_argument("--input", required=True)
    p_dim.add_argument("--mode", choices=["exact", "greedy"], default="exact")
    p_dim.set_defaults(func=cmd_dim)

    p_energy = sub.add_parser("energy", help="T_k energy of a function file")
    p_energy.add_argument("--input", required=True)
    p_energy.add_argument("--k", type=int, required=True)
    p_energy.add_argument("--method", choices=["direct", "spectral", "both"], default="both")
    p_energy.add_argument("--budget", type=int)
    p_energy.set_defaults(func=cmd_energy)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 3
    except (FileFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
