"""Command-line driver.

Subcommands
-----------
``check``
    Run the group pipeline and emit a JSON report.
``complex``
    Load an orbit-category complex and run the sphere, orientation, tightness
    and algebraic-representation checks.
``goldens``
    Recompute the A6/A7 structural facts and diff them against a stored table.

The JSON report goes to standard output (or ``--json-out``) and a short
summary to standard error.  Exit codes: 0 pass, 1 condition failure, 2 parse
or input error, 3 order bound exceeded, 4 invalid complex.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import (
    DegreeMismatch,
    InvalidComplex,
    OrderBoundExceeded,
    ParseError,
    UnknownBuiltin,
)

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND, EXIT_COMPLEX = 0, 1, 2, 3, 4


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _load_group(args):
    from .permgroup.builtins import builtin
    from .permgroup.io import group_from_json, read_group

    if args.builtin:
        return builtin(args.builtin)
    path = args.group
    if path.endswith(".json"):
        return group_from_json(_read_json(path))
    return read_group(path)


def _emit(report, args):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(lines):
    for line in lines:
        print(line, file=sys.stderr)


# -- check ------------------------------------------------------------------------------

def cmd_check(args):
    from .pipeline import run_check, summary_lines

    G = _load_group(args)
    tables = [_read_json(f) for f in args.character_file]
    report, ok = run_check(
        G, primes=args.p or None, character_files=tables, auto_type_b=args.auto_type_b,
    )
    if args.complex:
        creport, cok = complex_report(args.complex, args.nbar, args.local, group=G)
        report["complex"] = creport
        ok = ok and cok
    _emit(report, args)
    _say(summary_lines(report))
    return EXIT_PASS if ok else EXIT_FAIL


# -- complex ----------------------------------------------------------------------------

def _nbar_function(G, data):
    from .dimfun import SuperClassFunction

    if isinstance(data, dict) and "nbar" in data and isinstance(data["nbar"], dict):
        data = data["nbar"]
    if not isinstance(data, dict):
        raise ParseError("nbar must be an object mapping class labels to integers")
    vals = {}
    for label, v in data.items():
        try:
            c = G.lattice.by_label(label)
        except KeyError as exc:
            raise ParseError(f"unknown subgroup class label {label!r}") from exc
        if not isinstance(v, int):
            raise ParseError(f"nbar value for {label!r} must be an integer")
        vals[c.index] = v
    return SuperClassFunction.from_values(G, vals)


def complex_report(path, nbar_path=None, prime=None, group=None):
    """Run every complex-level check; returns ``(report, passed)``.

    ``passed`` requires the homology-sphere and algebraic-representation
    checks; orientation and tightness are reported but do not gate it.
    """
    from .orbitcat import (
        check_algrep,
        dim_functions,
        load_complex,
        orientation_report,
        sphere_report,
    )

    C, embedded = load_complex(path, group)
    G = C.group
    D, HD = dim_functions(C)
    if nbar_path:
        nbar, source = _nbar_function(G, _read_json(nbar_path)), "file"
    elif embedded is not None:
        nbar, source = _nbar_function(G, embedded), "embedded"
    else:
        nbar, source = HD, "inferred"
    sphere = sphere_report(C, nbar, prime)
    oriented = orientation_report(C, prime)
    algrep = check_algrep(C, nbar, prime)
    tight = all(D.at(c) == HD.at(c) for c in C.classes())
    report = {
        "version": __version__,
        "group": {"order": G.order, "degree": G.degree},
        "prime": prime,
        "nbar": {"source": source, "values": nbar.as_label_dict(include_outside=True)},
        "Dim": D.as_label_dict(include_outside=True),
        "HomDim": HD.as_label_dict(include_outside=True),
        "homology": C.homology(prime).to_dict(),
        "sphere": sphere.to_dict(),
        "oriented": oriented.to_dict(),
        "tight": tight,
        "algrep": algrep.to_dict(),
    }
    ok = sphere.passed and algrep.passed
    report["verdict"] = "PASS" if ok else "FAIL"
    return report, ok


def _complex_lines(r):
    mark = {True: "yes", False: "no"}
    return [
        f"nbar ({r['nbar']['source']}): {r['nbar']['values']}",
        f"homology sphere: {mark[r['sphere']['passed']]}",
        f"algebraic representation: {mark[r['algrep']['passed']]}",
        f"oriented: {mark[r['oriented']['passed']]}",
        f"tight: {mark[r['tight']]}",
        f"verdict: {r['verdict']}",
    ]


def cmd_complex(args):
    group = _load_group(args) if (args.builtin or args.group) else None
    report, ok = complex_report(args.complex, args.nbar, args.local, group=group)
    _emit(report, args)
    _say(_complex_lines(report))
    return EXIT_PASS if ok else EXIT_FAIL


# -- goldens ----------------------------------------------------------------------------

def cmd_goldens(args):
    from .goldens import compare, load_goldens

    table = load_goldens(args.goldens)
    report, ok = compare(table, args.only or None)
    _emit({"version": __version__, "goldens": report, "verdict": "PASS" if ok else "FAIL"}, args)
    for name, r in report.items():
        if "error" in r:
            _say([f"{name}: {r['error']}"])
            continue
        _say([f"{name}: {r['matched']}/{r['facts']} facts match"])
        for row in r["rows"]:
            if not row["match"]:
                _say([f"  {row['fact']}: expected {row['expected']!r}, got {row['actual']!r}"])
    return EXIT_PASS if ok else EXIT_FAIL


# -- entry point ------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="rankone", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def group_args(p, required):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--builtin", metavar="NAME", help="named group such as A6, S5, Qd3")
        g.add_argument("--group", metavar="FILE", help="group file (text or JSON)")

    def common(p):
        p.add_argument("--json-out", metavar="FILE", help="write the report here instead of stdout")

    pc = sub.add_parser("check", help="run the group pipeline")
    group_args(pc, True)
    pc.add_argument("--p", type=int, action="append", metavar="PRIME",
                    help="also test Qd(p) involvement for this prime (repeatable)")
    pc.add_argument("--character-file", action="append", default=[], metavar="FILE",
                    help="fixed-dimension table {classLabel: dim} for one prime (repeatable)")
    pc.add_argument("--auto-typeB", dest="auto_type_b", action="store_true",
                    help="use the character route when the normalizer-quotient condition fails")
    pc.add_argument("--complex", metavar="FILE", help="also check this complex over the group")
    pc.add_argument("--nbar", metavar="FILE")
    pc.add_argument("--local", type=int, metavar="P", help="localize complex homology at P")
    common(pc)
    pc.set_defaults(func=cmd_check)

    px = sub.add_parser("complex", help="check an orbit-category complex")
    group_args(px, False)
    px.add_argument("--complex", required=True, metavar="FILE")
    px.add_argument("--nbar", metavar="FILE", help="dimension function {classLabel: n}")
    px.add_argument("--local", type=int, metavar="P", help="localize homology at P")
    common(px)
    px.set_defaults(func=cmd_complex)

    pg = sub.add_parser("goldens", help="diff recomputed facts against the golden table")
    pg.add_argument("--goldens", metavar="FILE", help="golden table (default: bundled)")
    pg.add_argument("--only", action="append", metavar="GROUP")
    common(pg)
    pg.set_defaults(func=cmd_goldens)
    return ap


def _message(exc):
    msg = exc.args[0] if exc.args else ""
    return f"{type(exc).__name__}: {msg}"


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownBuiltin, DegreeMismatch, OSError) as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return EXIT_PARSE
    except OrderBoundExceeded as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return EXIT_BOUND
    except InvalidComplex as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return EXIT_COMPLEX


if __name__ == "__main__":
    sys.exit(main())
