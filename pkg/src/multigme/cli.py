"""Command line front end.

    multigme compute <catalog-name | file.ket | -> [solver flags] [--json PATH]
    multigme bound 2 2 2 2
    multigme reproduce {I,II,III,extra,all} [solver flags] [--json PATH]
    multigme catalog {list,show,export} [name] [-o PATH]

Exit codes: 0 ok, 1 usage, 2 parse, 3 mismatch, 4 non-convergence.  Errors
are printed to stderr as ``error[<kind>]: <message>``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import catalog
from .bounds import gme_from_sigma, upper_bound
from .ket_parser import KetError, parse, to_tensor
from .solver import NumericError, SolverConfig, solve, solve_symmetric

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_NONCONVERGENCE = 4

GME_TOL = 1e-3
BOUND_TOL = 5e-5
JSON_VERSION = "1"

TABLES = {
    "I": [
        ("2-qubit", "ghz:2"),
        ("3-qubit", "w3"),
        ("4-qubit", "cluster4"),
        ("5-qubit", "ame5"),
        ("6-qubit", "qubit6_ac13"),
    ],
    "II": [
        ("4-qubit", "cluster4"),
        ("4-qutrit", "qutrit4"),
        ("4-ququart", "ququart4"),
    ],
    "III": [
        ("2x2x2", "w3"),
        ("2x2x3", "het223"),
        ("2x3x3", "het233"),
        ("2x2x4", "het224"),
    ],
    # worked examples outside the three tables
    "extra": [
        ("3-qubit GHZ", "ghz:3"),
        ("3-qutrit GHZ", "qutrit_ghz"),
        ("3-qutrit Dicke", "dicke_qutrit"),
        ("3x3x3x3x3x2", "uniform2_3x5_2"),
    ],
}


class CliError(Exception):
    def __init__(self, kind: str, code: int, msg: str):
        super().__init__(msg)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", EXIT_USAGE, f"{self.prog}: {message}")


def _config(args) -> SolverConfig:
    try:
        return SolverConfig(
            alpha=args.alpha, tol=args.tol, max_iters=args.max_iters,
            restarts=args.restarts, seed=args.seed, symmetric_mode=args.symmetric,
        )
    except ValueError as exc:
        raise CliError("usage", EXIT_USAGE, str(exc)) from None


def _config_snapshot(cfg: SolverConfig) -> dict:
    return asdict(cfg)


def _fmt_c(z: complex, digits: int = 6) -> str:
    return f"({z.real:+.{digits}f}{z.imag:+.{digits}f}i)"


def _closest_text(closest) -> list[str]:
    lines = []
    for k, f in enumerate(closest.factors):
        terms = " + ".join(f"{_fmt_c(c)}|{j}>" for j, c in enumerate(f))
        lines.append(f"  mode {k + 1}: {terms}")
    return lines


def _load_source(source: str):
    """Returns ``(tensor, entry_or_None, scale)``."""
    try:
        entry = catalog.get(source)
    except KeyError:
        entry = None
    except ValueError as exc:
        raise CliError("usage", EXIT_USAGE, str(exc)) from None
    if entry is not None:
        if entry.tensor is None:
            raise CliError(
                "usage", EXIT_USAGE,
                f"catalog entry {source} has no amplitudes ({entry.citation}); supply a ket file",
            )
        return entry.tensor, entry, 1.0
    if source == "-":
        text = sys.stdin.read()
    else:
        path = Path(source)
        if not path.is_file():
            raise CliError("usage", EXIT_USAGE, f"{source!r} is neither a catalog name nor a readable file")
        text = path.read_text(encoding="utf-8")
    try:
        tensor, scale = to_tensor(parse(text))
    except KetError as exc:
        raise CliError("parse", EXIT_PARSE, f"{source}: {exc}") from None
    return tensor, None, scale


def _run(tensor, cfg: SolverConfig):
    try:
        return solve_symmetric(tensor, cfg) if cfg.symmetric_mode else solve(tensor, cfg)
    except ValueError as exc:
        raise CliError("usage", EXIT_USAGE, str(exc)) from None
    except NumericError as exc:
        raise CliError("numeric", EXIT_NONCONVERGENCE, str(exc)) from None


def _result_record(res, dims) -> dict:
    gme = gme_from_sigma(res.sigma)
    bound = upper_bound(dims)
    return {
        "sigma": res.sigma,
        "gme": gme,
        "bound": bound,
        "slack": bound - gme,
        "closest": [[[c.real, c.imag] for c in f] for f in res.closest.factors],
        "best_start": res.best_start,
        "iterations": list(res.iterations),
        "converged": list(res.converged),
        "best_converged": res.best_converged,
    }


def _write_json(path: str, record: dict) -> None:
    text = json.dumps(record, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_compute(args) -> int:
    cfg = _config(args)
    tensor, entry, scale = _load_source(args.source)
    if abs(scale - 1.0) > 1e-12:
        print(f"note: input rescaled by {scale:.12g} to unit norm", file=sys.stderr)
    t0 = time.perf_counter()
    res = _run(tensor, cfg)
    wall = time.perf_counter() - t0
    rec = _result_record(res, tensor.dims)

    expected = None
    if entry is not None and entry.expected_gme is not None:
        delta = rec["gme"] - entry.expected_gme
        expected = {
            "gme": entry.expected_gme,
            "bound": entry.expected_bound,
            "delta": delta,
            "pass": abs(delta) <= GME_TOL,
        }

    out = [
        f"source      {args.source}" + (f"  [{entry.citation}]" if entry else ""),
        f"dims        {' '.join(map(str, tensor.dims))}",
        f"sigma       {rec['sigma']:.6f}",
        f"GME         {rec['gme']:.4f}",
        f"bound       {rec['bound']:.4f}",
        f"slack       {rec['slack']:.4f}",
        "closest",
        *_closest_text(res.closest),
        f"iterations  {res.iterations[res.best_start]} (best start {res.best_start}); "
        f"{sum(res.converged)}/{len(res.converged)} starts converged",
        f"restarts    {cfg.restarts}",
    ]
    if expected:
        status = "PASS" if expected["pass"] else "FAIL"
        out.append(f"expected    GME {expected['gme']:.4f}  delta {expected['delta']:+.2e}  {status}")
    out.append(f"wall time   {wall:.3f} s")
    print("\n".join(out))

    if args.json:
        _write_json(args.json, {
            "version": JSON_VERSION,
            "command": "compute",
            "input": args.source,
            "dims": list(tensor.dims),
            "input_scale": scale,
            "config": _config_snapshot(cfg),
            "result": rec,
            "expected": expected,
        })

    if expected and not expected["pass"]:
        print(f"error[mismatch]: GME {rec['gme']:.4f} differs from expected {expected['gme']:.4f}", file=sys.stderr)
        return EXIT_MISMATCH
    if not res.best_converged:
        print("error[convergence]: best start did not converge; increase --max-iters", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def cmd_bound(args) -> int:
    try:
        dims = [int(d) for d in args.dims]
        value = upper_bound(dims)
    except ValueError as exc:
        raise CliError("usage", EXIT_USAGE, f"malformed dims: {exc}") from None
    print(f"{value:.4f}")
    return EXIT_OK


def reproduce_rows(table: str, cfg: SolverConfig) -> list[dict]:
    """Solve every row of a table (or all tables) and compare with the reported values."""
    keys = list(TABLES) if table == "all" else [table]
    cache: dict[str, object] = {}
    rows = []
    for key in keys:
        for label, name in TABLES[key]:
            entry = catalog.get(name)
            bound = upper_bound(entry.dims)
            row = {
                "table": key,
                "system": label,
                "name": name,
                "dims": list(entry.dims),
                "bound_expected": entry.expected_bound,
                "bound_computed": bound,
                "gme_expected": entry.expected_gme,
                "gme_computed": None,
                "sigma": None,
                "delta": None,
                "converged": None,
                "status": "SKIPPED",
            }
            if entry.tensor is not None:
                if name not in cache:
                    cache[name] = _run(entry.tensor, cfg)
                res = cache[name]
                gme = gme_from_sigma(res.sigma)
                delta = gme - entry.expected_gme
                ok = abs(delta) <= GME_TOL and abs(bound - entry.expected_bound) <= BOUND_TOL
                row.update(
                    gme_computed=gme, sigma=res.sigma, delta=delta,
                    converged=res.best_converged, status="PASS" if ok else "FAIL",
                )
            rows.append(row)
    return rows


def _render_rows(rows: list[dict]) -> str:
    head = f"{'table':<6}{'system':<16}{'bound':>8}{'ref':>8}{'GME':>9}{'ref':>8}{'delta':>11}  status"
    lines = [head, "-" * len(head)]
    for r in rows:
        gme = f"{r['gme_computed']:.4f}" if r["gme_computed"] is not None else "-"
        delta = f"{r['delta']:+.2e}" if r["delta"] is not None else "-"
        lines.append(
            f"{r['table']:<6}{r['system']:<16}{r['bound_computed']:>8.4f}{r['bound_expected']:>8.4f}"
            f"{gme:>9}{r['gme_expected']:>8.4f}{delta:>11}  {r['status']}"
        )
    return "\n".join(lines)


def cmd_reproduce(args) -> int:
    cfg = _config(args)
    rows = reproduce_rows(args.table, cfg)
    print(_render_rows(rows))
    failed = [r for r in rows if r["status"] == "FAIL"]
    if args.json:
        _write_json(args.json, {
            "version": JSON_VERSION,
            "command": "reproduce",
            "table": args.table,
            "config": _config_snapshot(cfg),
            "rows": rows,
            "passed": not failed,
        })
    if failed:
        names = ", ".join(f"{r['table']}:{r['system']}" for r in failed)
        print(f"error[mismatch]: {len(failed)} row(s) differ: {names}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _entry_or_error(name: str):
    try:
        return catalog.get(name)
    except (KeyError, ValueError):
        raise CliError("usage", EXIT_USAGE, f"unknown catalog name {name!r}") from None


def cmd_catalog(args) -> int:
    if args.action == "list":
        for e in catalog.entries():
            dims = "x".join(map(str, e.dims))
            gme = f"{e.expected_gme:.4f}" if e.expected_gme is not None else "-"
            flag = "  (external amplitudes)" if e.external else ""
            print(f"{e.name:<16}{dims:<13}GME {gme}  bound {e.expected_bound:.4f}  {e.citation}{flag}")
        return EXIT_OK
    if not args.name:
        raise CliError("usage", EXIT_USAGE, f"catalog {args.action} needs a name")
    entry = _entry_or_error(args.name)
    if entry.tensor is None:
        raise CliError("usage", EXIT_USAGE, f"catalog entry {entry.name} has no amplitudes ({entry.citation})")
    text = f"# {entry.name}: {entry.description} [{entry.citation}]\n" + entry.ket_text()
    if args.action == "export" and args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    d = SolverConfig()
    p.add_argument("--restarts", type=int, default=d.restarts)
    p.add_argument("--tol", type=float, default=d.tol)
    p.add_argument("--alpha", type=float, default=d.alpha)
    p.add_argument("--max-iters", type=int, default=d.max_iters)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--symmetric", action="store_true", help="restrict to equal factors")
    p.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multigme", description="Geometric measure of entanglement of pure states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="GME of a catalog state or ket file")
    p.add_argument("source", help="catalog name, path to a .ket file, or - for stdin")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bound", help="dimension-only GME upper bound")
    p.add_argument("dims", nargs="+")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("reproduce", help="recompute the published tables")
    p.add_argument("table", choices=[*TABLES, "all"])
    _add_solver_flags(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("catalog", help="list, show or export catalog states")
    p.add_argument("action", choices=["list", "show", "export"])
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output", help="export destination (default stdout)")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error[{exc.kind}]: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
