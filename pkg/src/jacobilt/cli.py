"""Command-line front end.

Subcommands map one-to-one onto the library's claims:

  constants   the bound constants per moment order, with improvement ratio
  spectrum    bound states of a perturbation file, in band-edge order
  check       one inequality variant on a perturbation file
  fuzz        seeded random suites over theorems and lemmas
  search      extremal-ratio optimization

Exit codes: 0 success, 1 usage or I/O error, 2 theorem-violation flag
(which indicates a solver bug, not new mathematics).  Reports embed a run
manifest; reruns with the same seed are byte-identical apart from the
manifest timestamp.  The environment variable JACOBILT_SEED overrides the
default seed when --seed is not given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__
from .errors import DomainError, StabilizationError, UsageError
from .extremal import OPTIMIZERS, SearchConfig, maximize_ratio, ratio_scan
from .lattice import CompactPerturbation
from .lemmalab import fuzz_lemmas
from .ltcheck import VARIANTS, bound_states, check, fuzz_theorems
from .operators import TruncationSpec
from .specfun import constants_for

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

DEFAULT_GAMMA_GRID = (1.0, 1.5, 2.0, 3.0)
DEFAULT_SEED = 0


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("JACOBILT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"JACOBILT_SEED must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _manifest(command: str, parameters: dict, seed: int) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "tool_version": __version__,
        "seed": seed,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_perturbation(path: str) -> CompactPerturbation:
    try:
        return CompactPerturbation.from_json_file(path)
    except FileNotFoundError as exc:
        raise UsageError(f"perturbation file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"perturbation file is not valid JSON: {exc}") from exc


def _truncation(args) -> TruncationSpec:
    return TruncationSpec(margin=args.margin, stability_tol=args.tol)


def _json_report(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_constants(args) -> int:
    gammas = args.gammas or list(DEFAULT_GAMMA_GRID)
    rows = []
    for gamma in gammas:
        c = constants_for(gamma)  # raises DomainError below 1/2
        rows.append({
            "gamma": gamma,
            "l_classical": c.l_classical,
            "c_hs": c.c_hs,
            "c_new_schrodinger": c.c_new_schrodinger,
            "c_new_jacobi": c.c_new_jacobi,
            "improvement_ratio": c.improvement_ratio,
            "new_constants_valid": c.new_valid,
        })
    if args.format == "json":
        payload = {"manifest": _manifest("constants", {"gammas": gammas}, _resolve_seed(args)),
                   "rows": rows}
        _emit(_json_report(payload), args.out)
    elif args.format == "csv":
        _emit(_rows_to_csv(rows), args.out)
    else:
        header = (f"{'gamma':>7} {'L^cl':>16} {'c_hs':>16} "
                  f"{'c_new_schrod':>16} {'c_new_jacobi':>16} {'c_hs/c_new_j':>14}")
        lines = [header]
        for r in rows:
            note = "" if r["new_constants_valid"] else "  (new constants need gamma >= 1)"
            lines.append(
                f"{r['gamma']:>7.3g} {r['l_classical']:>16.12f} {r['c_hs']:>16.12f} "
                f"{r['c_new_schrodinger']:>16.12f} {r['c_new_jacobi']:>16.12f} "
                f"{r['improvement_ratio']:>14.10f}{note}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    pert = _load_perturbation(args.perturbation)
    below, above, margin_used = bound_states(pert, spec=_truncation(args))
    payload = {
        "manifest": _manifest("spectrum", {"perturbation": args.perturbation,
                                           "margin": args.margin, "tol": args.tol},
                              _resolve_seed(args)),
        # labeled from the band edges outward: first entry is the extreme one
        "above": [float(e) for e in above[::-1]],
        "below": [float(e) for e in below],
        "margin_used": margin_used,
    }
    _emit(_json_report(payload), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    pert = _load_perturbation(args.perturbation)
    report = check(pert, args.variant, args.gamma, _truncation(args))
    payload = {"manifest": _manifest("check", {"perturbation": args.perturbation,
                                               "variant": args.variant, "gamma": report.gamma,
                                               "margin": args.margin, "tol": args.tol},
                                     _resolve_seed(args)),
               **report.as_dict()}
    if args.format == "csv":
        _emit(_rows_to_csv([{k: payload[k] for k in
                             ("variant", "gamma", "lhs", "rhs", "ratio", "margin_used")}]),
              args.out)
    else:
        _emit(_json_report(payload), args.out)
    return EXIT_VIOLATION if report.violation else EXIT_OK


def cmd_fuzz(args) -> int:
    seed = _resolve_seed(args)
    variants = args.variant_set or list(VARIANTS)
    gammas = args.gamma_grid or list(DEFAULT_GAMMA_GRID)
    spec = _truncation(args)
    theorems = fuzz_theorems(args.count, seed, gammas=gammas, variants=variants,
                             support_max=args.support, spec=spec)
    lemmas = fuzz_lemmas(seed, agmon=args.count, dgsi=args.count,
                         unitary=max(args.count // 10, 0),
                         jensen=args.count, lifting=max(args.count // 10, 0),
                         sandwich=max(args.count // 10, 0), spec=spec)
    lemma_violations = _lemma_violations(lemmas)
    payload = {
        "manifest": _manifest("fuzz", {"count": args.count, "support": args.support,
                                       "gamma_grid": gammas, "variant_set": variants},
                              seed),
        "theorems": theorems,
        "lemmas": lemmas,
        "lemma_violations": lemma_violations,
    }
    _emit(_json_report(payload), args.out)
    violated = theorems["violations"] > 0 or lemma_violations > 0
    return EXIT_VIOLATION if violated else EXIT_OK


# tolerance under which each lemma predicate counts as violated
_LEMMA_GATES = {"agmon": ("min", -1e-12), "dgsi": ("min", -1e-10),
                "jensen": ("min", -1e-12), "sandwich": ("min", -1e-10),
                "unitary": ("max", 1e-12), "lifting": ("max", 1e-8)}


def _lemma_violations(lemmas: dict) -> int:
    violations = 0
    for name, cell in lemmas["predicates"].items():
        kind, gate = _LEMMA_GATES[name]
        value = cell.get(kind)
        if value is None:
            continue
        if (kind == "min" and value < gate) or (kind == "max" and value > gate):
            violations += 1
    return violations


def cmd_search(args) -> int:
    seed = _resolve_seed(args)
    config = SearchConfig(
        variant=args.variant,
        gamma=args.gamma if args.gamma is not None else 1.0,
        support_size=args.k,
        vary_a=args.vary_a,
        b_bounds=tuple(args.bounds),
        a_bounds=tuple(args.a_bounds),
        restarts=args.restarts,
        seed=seed,
        optimizer=args.optimizer,
        max_evals=args.max_evals,
    )
    result = maximize_ratio(config, _truncation(args))
    payload = {
        "manifest": _manifest("search", {"scan_points": args.scan_points}, seed),
        "config": config.as_dict(),
        **result.as_dict(),
        "violation": result.best_ratio > 1.0 + 1e-9,
    }
    if config.support_size == 1 and not config.vary_a:
        rows = ratio_scan(config, points=args.scan_points, spec=_truncation(args))
        scan_path = args.scan_out
        with open(scan_path, "w") as fh:
            fh.write("# amplitude ratio\n")
            for amplitude, ratio in rows:
                fh.write(f"{amplitude:.12g} {ratio:.12g}\n")
        payload["scan_file"] = scan_path
    _emit(_json_report(payload), args.out)
    return EXIT_VIOLATION if payload["violation"] else EXIT_OK


def _rows_to_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobilt",
        description="Verify and probe discrete Lieb-Thirring bounds for Jacobi matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--margin", type=int, default=32,
                       help="initial free sites per side (default 32)")
        p.add_argument("--tol", type=float, default=1e-12,
                       help="eigenvalue stability tolerance (default 1e-12)")
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help="RNG seed (default: JACOBILT_SEED or 0)")

    p = sub.add_parser("constants", help="evaluate the bound constants per gamma")
    p.add_argument("gammas", nargs="*", type=float, help="moment orders (default grid)")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("spectrum", help="bound states of a perturbation file")
    p.add_argument("perturbation", help='JSON file {"offset": int, "b": [...], "a": [...]}')
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("check", help="run one inequality variant on a perturbation file")
    p.add_argument("perturbation")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--gamma", type=float, default=None,
                   help="moment order (ignored for hs1)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", help="seeded random theorem and lemma suites")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--support", type=int, default=9, help="max perturbation support")
    p.add_argument("--gamma-grid", type=float, nargs="+", default=None)
    p.add_argument("--variant-set", nargs="+", choices=VARIANTS, default=None)
    common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("search", help="maximize the lhs/rhs ratio over perturbations")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--k", type=int, default=1, help="perturbation support size")
    p.add_argument("--vary-a", action="store_true", help="search couplings too")
    p.add_argument("--bounds", type=float, nargs=2, default=(-5.0, 5.0),
                   metavar=("LO", "HI"), help="box bounds for b entries")
    p.add_argument("--a-bounds", type=float, nargs=2, default=(0.2, 3.0),
                   metavar=("LO", "HI"))
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--optimizer", choices=OPTIMIZERS, default="nelder-mead")
    p.add_argument("--max-evals", type=int, default=400)
    p.add_argument("--scan-points", type=int, default=256)
    p.add_argument("--scan-out", default="ratio_scan.dat",
                   help="two-column amplitude/ratio file written when k = 1")
    common(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
