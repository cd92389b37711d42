"""Command line front end: `mtk <command> [flags]`."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import charexp, homfly
from .coxeter import CartanType, GroupTooLarge, weyl_group
from .expr import ExprError, parse_element
from .hecke import CacheError, KLTable, format_q_poly, install_kl_table, kl_table
from .linsolve import SolveError
from .ring import HUMAN_NAMES, BiLaurent, RatFn, parse_poly
from .trace import UnsupportedTrace, geometric_trace, hochschild_series, positivity_report, solve_trace

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_SELFTEST = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_type(p):
    p.add_argument("--family", required=True, choices=["A", "B", "D"])
    p.add_argument("--rank", required=True, type=int)


def _add_output(p):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--human", action="store_true", help="print powers of v as q^(k/2)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mtk", description="Markov traces on Hecke algebras of types A, B, D.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("trace", help="trace of an element (geometric trace, or --y)")
    _add_type(p)
    p.add_argument("--element", required=True)
    p.add_argument("--y", help="special parameter y (types B, D); default -t")
    p.add_argument("--kl-cache")
    _add_output(p)

    p = sub.add_parser("kl", help="Kazhdan-Lusztig polynomials")
    _add_type(p)
    p.add_argument("--w", help="only the polynomials P_{x,w} for this w")
    p.add_argument("--kl-cache")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hochschild", help="Tr(C'_w), the Hochschild homology series of S_w")
    _add_type(p)
    p.add_argument("--w", required=True)
    p.add_argument("--cutoff", type=int, help="also expand to this v-order and check positivity")
    p.add_argument("--kl-cache")
    _add_output(p)

    p = sub.add_parser("gomi", help="trace through characters, Fourier matrix and Molien series")
    _add_type(p)
    p.add_argument("--element", required=True)
    p.add_argument("--fourier", help="Fourier data file (JSON)")
    p.add_argument("--kl-cache")
    _add_output(p)

    p = sub.add_parser("homfly", help="HOMFLYPT invariant of a braid closure")
    p.add_argument("--braid", required=True)
    p.add_argument("--strands", required=True, type=int)
    p.add_argument("--vars", choices=["vt", "az"], default="az")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("solve-trace", help="solve the Markov conditions for a full trace table")
    _add_type(p)
    p.add_argument("--y", default="-t")
    _add_output(p)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.add_argument("--kl-cache", help="also validate this KL cache against a fresh computation")
    p.add_argument("--json", action="store_true")
    return parser


# --- helpers -------------------------------------------------------------------

def _cartan(args) -> CartanType:
    try:
        ct = CartanType(args.family, args.rank)
        weyl_group(ct)
    except (ValueError, GroupTooLarge) as exc:
        raise UsageError(str(exc)) from None
    return ct


def _names(args):
    return HUMAN_NAMES if getattr(args, "human", False) else ("v", "t")


def _fmt(x, args) -> str:
    if isinstance(x, BiLaurent):
        return x.format(_names(args))
    return x.format(_names(args))


def _cache_path(args, ct: CartanType) -> Optional[Path]:
    if getattr(args, "kl_cache", None):
        return Path(args.kl_cache)
    root = os.environ.get("MTK_CACHE_DIR")
    if root:
        return Path(root) / f"kl-{ct.family}{ct.rank}.txt"
    return None


def _use_cache(args, ct: CartanType) -> Optional[Path]:
    """Install a cached KL table if one exists; returns the path to write back to."""
    path = _cache_path(args, ct)
    if path is not None and path.exists():
        install_kl_table(KLTable.load(path, ct))
    return path


def _save_cache(path: Optional[Path], ct: CartanType) -> None:
    table = kl_table(ct)
    if path is not None and (table.dirty or not path.exists()):
        path.parent.mkdir(parents=True, exist_ok=True)
        table.save(path)


def _parse_y(text: str) -> BiLaurent:
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise UsageError(f"bad --y {text!r}: {exc}") from None


def _element(args, ct):
    try:
        return parse_element(args.element, ct)
    except ExprError as exc:
        raise UsageError(f"bad --element: {exc}") from None


def _word(ct: CartanType, text: str) -> int:
    g = weyl_group(ct)
    try:
        return g.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --w {text!r}: {exc}") from None


def _print_value(value: RatFn, args, extra: Optional[dict] = None) -> None:
    if args.json:
        out = {"value": value.to_json(), "text": _fmt(value, args)}
        out.update(extra or {})
        print(json.dumps(out, sort_keys=True))
    else:
        print(_fmt(value, args))


# --- commands ------------------------------------------------------------------

def cmd_trace(args) -> int:
    ct = _cartan(args)
    path = _use_cache(args, ct)
    h = _element(args, ct)
    if args.y is not None:
        value = solve_trace(ct, _parse_y(args.y)).trace(h)
    else:
        value = geometric_trace(h)
    _save_cache(path, ct)
    _print_value(value, args, {"type": str(ct), "element": args.element})
    return EXIT_OK


def cmd_kl(args) -> int:
    ct = _cartan(args)
    path = _use_cache(args, ct)
    table = kl_table(ct)
    g = table.group
    if args.w is not None:
        w = _word(ct, args.w)
        pairs = [(x, w) for x in sorted(g.bruhat_interval(w), key=lambda i: (g.length[i], i))]
    else:
        table.fill()
        pairs = sorted(table.polys, key=lambda p: (p[1], p[0]))
    rows = []
    for x, w in pairs:
        rows.append((table._word(x), table._word(w), table.poly(x, w)))
    _save_cache(path, ct)
    if args.json:
        print(json.dumps([{"x": x, "w": w, "P": list(p)} for x, w, p in rows]))
    else:
        for x, w, p in rows:
            print(f"P[{x} ; {w}] = {format_q_poly(p)}")
    return EXIT_OK


def cmd_hochschild(args) -> int:
    ct = _cartan(args)
    path = _use_cache(args, ct)
    w = weyl_group(ct).element(_word(ct, args.w))
    value = hochschild_series(w)
    _save_cache(path, ct)
    extra = {"type": str(ct), "w": args.w}
    if args.cutoff is not None:
        rep = positivity_report(value, args.cutoff, ct.rank)
        extra["positivity"] = {
            "pass": rep.passed, "cutoff": args.cutoff, "order": rep.order,
            "witness": list(rep.witness) if rep.witness else None, "reason": rep.reason,
        }
    _print_value(value, args, extra)
    if args.cutoff is not None and not args.json:
        print("positivity to v^%d: %s" % (args.cutoff, "pass" if rep.passed else
              f"fail at v^{rep.order} ({rep.reason}; t-coefficients {list(rep.witness)})"))
    return EXIT_OK


def cmd_gomi(args) -> int:
    ct = _cartan(args)
    path = _use_cache(args, ct)
    h = _element(args, ct)
    block = charexp.fourier_block(ct, args.fourier)
    value = charexp.gomi_trace(ct, h, block)
    _save_cache(path, ct)
    _print_value(value, args, {"type": str(ct), "element": args.element})
    return EXIT_OK


def cmd_homfly(args) -> int:
    try:
        b = homfly.parse_braid(args.braid, args.strands)
    except homfly.BraidError as exc:
        raise UsageError(str(exc)) from None
    inv = homfly.homfly_invariant(b)
    n = b.strands - 1
    if args.vars == "az":
        text = inv.format_az()
    else:
        tr = homfly.trace_of_braid(b)
        pref = BiLaurent.monomial(1, n, 0).format(("v", "t"))
        apow = -(b.writhe + n)
        head = " ".join(s for s in ((f"a^{apow}" if apow not in (0, 1) else ("a" if apow else "")), pref)
                        if s and s != "1")
        text = f"{head} * ({tr.format()})" if head else tr.format()
    if args.json:
        out = {"braid": str(b), "strands": b.strands, "writhe": b.writhe,
               "components": b.components(), "vars": args.vars, "text": text}
        if args.vars == "az":
            out["terms"] = [[c, ea, ez] for (ea, ez), c in sorted(inv.to_az().items(), key=lambda kv: (-kv[0][0], kv[0][1]))]
        print(json.dumps(out, sort_keys=True))
    else:
        print(text)
    return EXIT_OK


def cmd_solve_trace(args) -> int:
    ct = _cartan(args)
    table = solve_trace(ct, _parse_y(args.y))
    if args.json:
        print(table.dumps())
    else:
        g = weyl_group(ct)
        for i in range(len(g)):
            word = " ".join(map(str, g.reduced_word(i))) or "e"
            print(f"{word}: {_fmt(table.value(i), args)}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    echo = None if args.json else print
    results = run_selftest(args.level, kl_cache=args.kl_cache, echo=echo)
    ok = all(r.passed for r in results)
    if args.json:
        print(json.dumps([{"criterion": r.number, "name": r.name, "pass": r.passed,
                           "detail": r.detail} for r in results]))
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} passed")
    return EXIT_OK if ok else EXIT_SELFTEST


COMMANDS = {
    "trace": cmd_trace, "kl": cmd_kl, "hochschild": cmd_hochschild, "gomi": cmd_gomi,
    "homfly": cmd_homfly, "solve-trace": cmd_solve_trace, "selftest": cmd_selftest,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"mtk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedTrace, SolveError, charexp.CharacterError, CacheError,
            homfly.BraidError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"mtk: {args.command} failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
