"""Command-line front end.

Commands: analyze, fedder, hasse-witt, resolve, verify, search,
corpus run.  Exit codes: 0 verified, 1 invalid input, 2 singular input,
3 hypothesis-not-met, 4 inconsistent, 5 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import detrep, pipeline
from .errors import FrobdetError
from .fields import FiniteField
from .graded import (
    exact_differentials_module,
    hilbert_function,
    minimal_generators,
    presentation,
    regularity_from_betti,
    saturate,
)
from .hypersurface import fedder_split_test, hasse_witt
from .pipeline import (
    EXIT_INTERNAL,
    EXIT_INVALID_INPUT,
    EXIT_VERIFIED,
    PipelineOptions,
    analyze,
    exit_code_for,
    parse_input,
    random_search,
    run_corpus,
)
from .poly import HomogPoly, parse_poly


def _add_poly_args(sp):
    sp.add_argument("--p", type=int, required=True, help="prime characteristic")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly", help="defining form, e.g. 'x^3+y^3+z^3'")
    group.add_argument("--poly-file", help="file containing the defining form")


def _add_common_args(sp):
    sp.add_argument("--json", dest="json_path", help="write a JSON report here")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sz-trials", type=int, default=16)


def _poly_text(args) -> str:
    if args.poly is not None:
        return args.poly
    return Path(args.poly_file).read_text(encoding="utf-8").strip()


def _write_json(args, payload: dict):
    if getattr(args, "json_path", None):
        Path(args.json_path).write_text(
            json.dumps(payload, indent=2), encoding="utf-8"
        )


def _cmd_analyze(args) -> int:
    h = parse_input(_poly_text(args), args.p)
    opts = PipelineOptions(seed=args.seed, sz_trials=args.sz_trials)
    report = analyze(h, opts, mode=args.mode)
    _write_json(args, report.to_dict())
    print(f"verdict: {report.verdict}" + (f" (stage: {report.stage})" if report.stage else ""))
    if report.certificate:
        c = report.certificate
        print(
            f"certificate: size={c['size']} r={c['r']} lambda={c['lambda']} "
            f"method={c['method']}"
        )
    if report.betti:
        print(
            f"betti: generators {report.betti['gen_degrees']} "
            f"relations {report.betti['rel_degrees']} "
            f"regularity {report.betti['regularity']}"
        )
    return exit_code_for(report)


def _cmd_fedder(args) -> int:
    h = parse_input(_poly_text(args), args.p)
    split = fedder_split_test(h)
    _write_json(args, {"p": args.p, "poly": h.form.to_text(), "split": split})
    print(f"frobenius split: {str(split).lower()}")
    return EXIT_VERIFIED


def _cmd_hasse_witt(args) -> int:
    h = parse_input(_poly_text(args), args.p)
    hw = hasse_witt(h)
    ordinary = hw.is_invertible()
    payload = {
        "p": args.p,
        "poly": h.form.to_text(),
        "genus": h.genus,
        "matrix": hw.entries.tolist(),
        "det": hw.det(),
        "ordinary": ordinary,
    }
    _write_json(args, payload)
    print(f"genus: {h.genus}")
    for row in hw.entries.tolist():
        print("  " + " ".join(str(v) for v in row))
    print(f"det: {hw.det()}  ordinary: {str(ordinary).lower()}")
    return EXIT_VERIFIED


def _cmd_resolve(args) -> int:
    h = parse_input(_poly_text(args), args.p)
    if args.twist < 0:
        raise FrobdetError("--twist must be >= 0")
    n = h.ambient_dim
    sat_hi = max(args.max_degree or 0, n + 2 + args.twist)
    module = exact_differentials_module(h, sat_hi + 3)
    sat = saturate(
        module, 0, sat_hi,
        max_power=h.p * (h.degree + n),
        extend=lambda hi: exact_differentials_module(h, hi),
    )
    work = sat.twist(args.twist) if args.twist else sat
    pres = presentation(work, h, e_max=n)
    payload = {
        "p": args.p,
        "poly": h.form.to_text(),
        "twist": args.twist,
        "hilbert": {str(m): d for m, d in sorted(hilbert_function(sat).items())},
        "gen_degrees": list(pres.gen_degrees),
        "rel_degrees": list(pres.rel_degrees),
        "regularity": regularity_from_betti(pres),
        "generator_count": len(minimal_generators(work, up_to=n - 1 - args.twist)),
        "entries": [[e.to_text() for e in row] for row in pres.entries],
    }
    _write_json(args, payload)
    print(
        f"generators at degrees {payload['gen_degrees']}, relations at "
        f"{payload['rel_degrees']}, regularity {payload['regularity']}"
    )
    return EXIT_VERIFIED


def _cmd_verify(args) -> int:
    spec = json.loads(Path(args.matrix_file).read_text(encoding="utf-8"))
    p = spec.get("p", args.p)
    if p is None:
        raise FrobdetError("matrix file or --p must supply the prime")
    field = FiniteField(p)
    form = parse_poly(_poly_text(args), field, nvars=spec.get("nvars"))
    nv = spec.get("nvars", form.nvars)
    rows = [
        [
            HomogPoly.zero(field, nv, 0) if cell.strip() in ("", "0")
            else parse_poly(cell, field, nvars=nv)
            for cell in row
        ]
        for row in spec["entries"]
    ]
    cert = detrep.verify_det_power(
        rows, form, trials=args.sz_trials, seed=args.seed
    )
    _write_json(args, cert.to_dict())
    print(
        f"det(M) = {cert.lam} * form^{cert.r} confirmed "
        f"(size {cert.size}, method {cert.method})"
    )
    return EXIT_VERIFIED


def _cmd_search(args) -> int:
    h = random_search(
        args.kind, args.p, args.d, args.n, seed=args.seed, budget=args.budget
    )
    if h is None:
        print("no sample found within the budget")
        return EXIT_INVALID_INPUT
    payload = {
        "kind": args.kind,
        "p": args.p,
        "d": args.d,
        "n": args.n,
        "poly": h.form.to_text(),
    }
    _write_json(args, payload)
    print(h.form.to_text())
    return EXIT_VERIFIED


def _cmd_corpus(args) -> int:
    out_dir = args.out or str(Path(args.directory) / "reports")
    summary = run_corpus(
        args.directory, jobs=args.jobs, seed=args.seed, out_dir=out_dir,
        sz_trials=args.sz_trials,
    )
    print(
        f"{summary['cases']} cases: "
        + ", ".join(f"{k}={v}" for k, v in summary["verdicts"].items())
    )
    print(f"reports written to {out_dir}")
    return EXIT_VERIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobdet",
        description=(
            "Exact determinantal representations of plane curves and "
            "hypersurfaces over small finite fields"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="run the full pipeline")
    _add_poly_args(sp)
    _add_common_args(sp)
    sp.add_argument("--mode", choices=["curve", "hypersurface"], default=None)
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("fedder", help="Frobenius splitting test")
    _add_poly_args(sp)
    _add_common_args(sp)
    sp.set_defaults(func=_cmd_fedder)

    sp = sub.add_parser("hasse-witt", help="Hasse-Witt matrix of a plane curve")
    _add_poly_args(sp)
    _add_common_args(sp)
    sp.set_defaults(func=_cmd_hasse_witt)

    sp = sub.add_parser("resolve", help="section module, Betti data only")
    _add_poly_args(sp)
    _add_common_args(sp)
    sp.add_argument("--twist", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=None)
    sp.set_defaults(func=_cmd_resolve)

    sp = sub.add_parser("verify", help="verify det(M) against a form")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--matrix-file", required=True,
                    help="JSON file with entries (and optionally p, nvars)")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly")
    group.add_argument("--poly-file")
    _add_common_args(sp)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("search", help="random search for gated inputs")
    sp.add_argument("--kind", required=True,
                    choices=["ordinary-curve", "split-hypersurface"])
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=500)
    _add_common_args(sp)
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("corpus", help="corpus runner")
    corpus_sub = sp.add_subparsers(dest="corpus_command", required=True)
    run_sp = corpus_sub.add_parser("run", help="run every case in a directory")
    run_sp.add_argument("directory")
    run_sp.add_argument("--jobs", type=int, default=1)
    run_sp.add_argument("--seed", type=int, default=0)
    run_sp.add_argument("--sz-trials", type=int, default=16)
    run_sp.add_argument("--out", default=None)
    run_sp.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FrobdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except Exception as exc:  # pragma: no cover - internal failures
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
