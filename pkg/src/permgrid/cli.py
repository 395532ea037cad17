"""Command-line interface: ``permgrid <command> [options]``.

Every command prints its result in the chosen ``--format`` (json, csv or
plain).  The exit status is 0 when every requested check passes, 1 when a
check fails and 2 on invalid input; failures and errors are reported as a
JSON document on stdout so that scripts can parse them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .bijections import BIJECTIONS, lam, lam_inverse, verify_bijection
from .cache import SequenceCache, default_dir
from .dyck import (
    DecoratedDyckPath,
    DyckPath,
    articulation_231,
    articulation_321,
    decorated_to_gridded,
    dyck_to_perm231,
    dyck_to_perm312,
    dyck_to_perm321,
    perm231_to_dyck,
    perm312_to_dyck,
    perm321_to_dyck,
)
from .gf import closed_form, expand, verify_algebraic
from .grammar import (
    BUILTIN_NAMES,
    CLASS_GRAMMARS,
    builtin_grammar,
    format_grammar,
    parse_grammar,
    solve_series,
    transcribe,
)
from .juxtaposition import NAMED, JuxtSpec, counts_by_bruteforce, juxt
from .oeis import compare, embedded, read_bfile
from .perm import DEFAULT_EXHAUSTION_CAP, Permutation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
METHODS = ("brute", "grammar", "closed")


class CommandError(Exception):
    """Invalid input for a command; reported with exit status 2."""


# --------------------------------------------------------------------------
# output


def _emit(data: dict, fmt: str, table: list[dict] | None = None, text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2))
    elif fmt == "csv":
        rows = table if table is not None else [data]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _flat(v) for k, v in row.items()})
        sys.stdout.write(buf.getvalue())
    else:
        print(text if text is not None else "\n".join(f"{k}: {_flat(v)}" for k, v in data.items()))


def _flat(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


# --------------------------------------------------------------------------
# class resolution and counting


def _resolve(label: str) -> tuple[str | None, JuxtSpec]:
    label = label.strip()
    try:
        spec = juxt(label)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    named = next((k for k, v in NAMED.items() if v == spec), None)
    return named, spec


def _cache(args) -> SequenceCache | None:
    directory = args.cache_dir or default_dir()
    return SequenceCache(directory) if directory else None


def compute_counts(label: str, method: str, n_max: int, cap: int = DEFAULT_EXHAUSTION_CAP,
                   derived: bool = False, cache: SequenceCache | None = None) -> list[int]:
    named, spec = _resolve(label)
    if n_max < 0:
        raise CommandError("--n must be nonnegative")
    if method == "brute":
        if n_max > cap:
            raise CommandError(f"brute force is capped at n = {cap} (got {n_max}); raise --cap")

        def run():
            return counts_by_bruteforce(spec, n_max, cap=cap)
    elif method == "grammar":
        if named is None:
            raise CommandError(f"no grammar for {spec}; grammars exist for classes A, B, C")

        def run():
            g = builtin_grammar(CLASS_GRAMMARS[named])
            return list(solve_series(g, n_max)[g.start])
    elif method == "closed":
        if named is None:
            raise CommandError(f"no closed form for {spec}")
        try:
            expr = closed_form(named, derived=derived)
        except KeyError:
            raise CommandError(
                f"class {named} has no published closed form; run 'verify-algebraic "
                f"--class {named}' or pass --derived for the derived formula"
            ) from None
        method = "closed-derived" if derived and named == "C" else method

        def run():
            return list(expand(expr, n_max, counting=True))
    else:
        raise CommandError(f"unknown method {method!r}")
    if cache is None:
        return [int(x) for x in run()]
    return cache.get_or_compute(str(spec), method, n_max, run)


# --------------------------------------------------------------------------
# commands


def cmd_count(args) -> int:
    counts = compute_counts(args.cls, args.method, args.n, args.cap, args.derived, _cache(args))
    named, spec = _resolve(args.cls)
    data = {"class": named or str(spec), "spec": str(spec), "method": args.method,
            "n_max": args.n, "counts": [str(c) for c in counts]}
    table = [{"n": n, "count": c} for n, c in enumerate(counts)]
    _emit(data, args.format, table, ",".join(str(c) for c in counts))
    return EXIT_OK


def cmd_oeis_check(args) -> int:
    named, spec = _resolve(args.cls)
    if args.bfile:
        try:
            reference = read_bfile(args.bfile)
        except OSError as exc:
            raise CommandError(f"cannot read b-file: {exc}") from None
    else:
        if named is None:
            raise CommandError(f"no embedded reference for {spec}; pass --bfile")
        reference = embedded(named)
    n_max = args.n if args.n is not None else max(reference.indices)
    counts = compute_counts(args.cls, args.method, n_max, args.cap, args.derived, _cache(args))
    report = compare(reference, counts, n_max)
    data = {"class": named or str(spec), "method": args.method, **report.to_dict()}
    table = [{"n": n, "expected": reference[n], "got": counts[n], "ok": reference[n] == counts[n]}
             for n in reference.indices if n <= n_max and n < len(counts)]
    text = f"{reference.id}: {report.checked} terms checked, " + (
        "all match" if report.ok else f"{len(report.mismatches)} mismatches "
        + "; ".join(f"a({n}) expected {e} got {g}" for n, e, g in report.mismatches))
    _emit(data, args.format, table, text)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_bijection(args) -> int:
    report = verify_bijection(args.name, args.n, cap=args.cap)
    data = report.to_dict()
    text = (f"{report.name} n={report.n}: domain {report.domain_size}, image {report.image_size}, "
            f"target {report.target_size}, failures {len(report.failures)}"
            + ("" if report.bijective else " -- NOT BIJECTIVE"))
    _emit(data, args.format, [{k: v for k, v in data.items() if k != "failures"}], text)
    return EXIT_OK if report.bijective else EXIT_FAIL


_DYCK_DECODE = {"to-perm231": dyck_to_perm231, "to-perm321": dyck_to_perm321,
                "to-perm312": dyck_to_perm312}
_DYCK_ENCODE = {"from-perm231": perm231_to_dyck, "from-perm321": perm321_to_dyck,
                "from-perm312": perm312_to_dyck}
DYCK_ACTIONS = (*_DYCK_DECODE, *_DYCK_ENCODE, "articulation231", "articulation321",
                "lambda", "lambda-inverse", "decorated")


def cmd_dyck(args) -> int:
    action, text = args.action, args.input
    if action in _DYCK_DECODE:
        result = str(_DYCK_DECODE[action](DyckPath.from_text(text)))
        data = {"path": str(DyckPath.from_text(text)), "perm": result}
    elif action in _DYCK_ENCODE:
        result = str(_DYCK_ENCODE[action](Permutation(text)))
        data = {"perm": str(Permutation(text)), "path": result}
    elif action in ("articulation231", "articulation321"):
        path = DyckPath.from_text(text)
        art = (articulation_231 if action == "articulation231" else articulation_321)(path)
        data = {"path": str(path), "index": None if art is None else art.index,
                "grid": None if art is None else list(art.grid)}
        result = "none" if art is None else f"{art.index} ({art.grid[0]},{art.grid[1]})"
    elif action in ("lambda", "lambda-inverse"):
        result = str((lam if action == "lambda" else lam_inverse)(Permutation(text)))
        data = {"perm": str(Permutation(text)), "image": result}
    else:  # decorated
        named, _ = _resolve(args.cls)
        d = DecoratedDyckPath.from_text(text, placement=_placement(named or args.cls))
        g = decorated_to_gridded(d, named or args.cls)
        result = str(g)
        data = {"decorated": str(d), "gridded": result, "split": g.split}
    _emit(data, args.format, None, result)
    return EXIT_OK


def _placement(cls: str) -> str:
    from .dyck import convention
    return convention(cls).placement


def _load_grammar(args):
    if args.file:
        try:
            return parse_grammar(Path(args.file).read_text(), Path(args.file).stem)
        except OSError as exc:
            raise CommandError(f"cannot read grammar file: {exc}") from None
    if not args.name:
        raise CommandError("give a built-in grammar name or --file")
    return builtin_grammar(args.name)


def cmd_grammar(args) -> int:
    g = _load_grammar(args)
    if args.action == "print":
        data = {"name": g.name, "rules": g.rules().splitlines()}
        _emit(data, args.format, [{"rule": r} for r in data["rules"]], g.rules())
    elif args.action == "dump":
        text = format_grammar(g)
        data = {"name": g.name, "grammar": text, "equations": str(transcribe(g)).splitlines()}
        _emit(data, args.format, [{"equation": e} for e in data["equations"]],
              text + "\n# transcription\n" + "\n".join("# " + e for e in data["equations"]))
    else:
        values = solve_series(g, args.order, t_substitution=not args.no_t)
        data = {"name": g.name, "order": args.order,
                "series": {v: [str(c) for c in s] for v, s in values.items()}}
        start = values[g.start]
        table = [{"n": n, **{v: values[v][n] for v in g.variables}} for n in range(args.order + 1)]
        _emit(data, args.format, table, ",".join(str(c) for c in start))
    return EXIT_OK


def cmd_verify_algebraic(args) -> int:
    named, spec = _resolve(args.cls)
    if named is None:
        raise CommandError(f"verify-algebraic needs one of the classes A, B, C, not {spec}")
    ok = verify_algebraic(named, args.order)
    data = {"class": named, "order": args.order, "zero_residual": ok}
    _emit(data, args.format, None,
          f"class {named}: residual {'zero' if ok else 'NONZERO'} to z^{args.order}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_report(args) -> int:
    from .report import disagreements, report_rows, write_report

    files = write_report(args.out, order=args.order, n_brute=args.n)
    bad = disagreements(report_rows(args.order, args.n))
    data = {"files": files.as_dict(), "order": args.order, "n_brute": args.n,
            "disagreements": len(bad)}
    _emit(data, args.format, [files.as_dict()],
          "\n".join(files.as_dict().values()) + f"\ndisagreements: {len(bad)}")
    return EXIT_OK if not bad else EXIT_FAIL


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--cache-dir", default=None,
                        help="cache directory for computed sequences (default: $PERMGRID_CACHE)")
    common.add_argument("--cap", type=int, default=DEFAULT_EXHAUSTION_CAP,
                        help="largest length allowed for exhaustive generation")

    parser = argparse.ArgumentParser(
        prog="permgrid", description="Enumerate and verify juxtaposition classes Av(abc|xy).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="counting sequence of a class")
    p.add_argument("--class", dest="cls", required=True, help="A, B, C or a spec like '231|12'")
    p.add_argument("--method", choices=METHODS, default="grammar")
    p.add_argument("--n", type=int, default=12, help="largest length")
    p.add_argument("--derived", action="store_true", help="allow the derived closed form for C")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oeis-check", parents=[common], help="compare with a reference sequence")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--method", choices=METHODS, default="grammar")
    p.add_argument("--bfile", default=None, help="OEIS b-file (default: embedded prefix)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--derived", action="store_true")
    p.set_defaults(func=cmd_oeis_check)

    p = sub.add_parser("bijection", parents=[common], help="exhaustively verify a bijection")
    p.add_argument("name", choices=sorted(BIJECTIONS))
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("dyck", parents=[common], help="Dyck path encodings")
    p.add_argument("action", choices=DYCK_ACTIONS)
    p.add_argument("input", help="U/R path word, permutation, or 'path;h1,...;gap'")
    p.add_argument("--class", dest="cls", default="A", help="class for 'decorated'")
    p.set_defaults(func=cmd_dyck)

    p = sub.add_parser("grammar", parents=[common], help="print, dump or solve a grammar")
    p.add_argument("action", choices=("solve", "print", "dump"))
    p.add_argument("name", nargs="?", help=f"one of {', '.join(BUILTIN_NAMES)}")
    p.add_argument("--file", default=None, help="grammar text file instead of a built-in")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--no-t", action="store_true", help="set t = 1 instead of 1/(1-z)")
    p.set_defaults(func=cmd_grammar)

    p = sub.add_parser("verify-algebraic", parents=[common],
                       help="zero-residual check of a class's equation system")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--order", type=int, default=100)
    p.set_defaults(func=cmd_verify_algebraic)

    p = sub.add_parser("report", parents=[common], help="write counts.csv and PNG figures")
    p.add_argument("--out", default="permgrid-report")
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--n", type=int, default=7, help="largest brute-force length")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CommandError, ValueError, KeyError, ArithmeticError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"ok": False, "command": args.command, "error": str(message),
                          "type": type(exc).__name__}))
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
