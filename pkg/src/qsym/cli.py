"""Command line front end.

    qsym [--config F] [--json] verify --suite koszul|homotopy|chainmaps|bracket|skew|all
    qsym basis -m M --cap C
    qsym bracket --alpha E --beta E [--method closed|pipeline|both]
    qsym lift --map phi|psi --degree P --input E
    qsym dq --i I --mono E

Exit status: 0 success, 1 a verification or equality failure, 2 a configuration
or syntax error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import chainmaps
from .algebra import format_monomial
from .brackets import (bracket_closed, bracket_pipeline, hh_basis)
from .complexes import BarElem, KoszulElem
from .config import Config, ConfigError, load_config
from .expr import ParseError, format_cochain, parse_cocycle, parse_monomial
from .group_extension import (SkewKoszulCochain, bracket_skew_closed, bracket_skew_pipeline,
                              hh_skew_basis, reynolds)
from .suites import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input that is not a parse error, such as a closed bracket for a monomial action."""


# ---------------------------------------------------------------------------
# serialization

def _indices(wedge) -> list[int]:
    return [i + 1 for i in wedge]


def cochain_terms(x) -> list[dict]:
    out = []
    for key, c in x.sorted_items():
        if isinstance(x, SkewKoszulCochain):
            mono, g, wedge = key
        else:
            (mono, wedge), g = key, ()
        out.append({"coeff": str(c), "monomial": list(mono), "group": list(g), "dx": _indices(wedge)})
    return out


def resolution_terms(x) -> list[dict]:
    """Terms of a Koszul element (middle = wedge indices) or bar element (middle = word)."""
    out = []
    for (u, mid, v), c in x.sorted_items():
        middle = _indices(mid) if isinstance(x, KoszulElem) else [list(m) for m in mid]
        out.append({"coeff": str(c), "left": list(u), "middle": middle, "right": list(v)})
    return out


def envelope_terms(x) -> list[dict]:
    return [{"coeff": str(c), "left": list(u), "right": list(v)} for (u, v), c in x.sorted_items()]


# ---------------------------------------------------------------------------
# commands; each returns (status, result list, checks dict, text lines)

def cmd_verify(cfg: Config, args) -> tuple:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(cfg, names)
    checks = {r.name: r.as_dict() for r in results}
    ok = all(r.passed for r in results)
    lines = []
    for r in results:
        lines.append(f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.checked} checks)")
        if not r.passed:
            lines.append(f"  counterexample: {r.counterexample}")
    return ("ok" if ok else "fail"), [], checks, lines


def cmd_basis(cfg: Config, args) -> tuple:
    if args.m < 0 or args.cap < 0:
        raise UsageError("-m and --cap must be non-negative")
    if cfg.action is None:
        basis = hh_basis(cfg.ctx, args.m, args.cap)
    elif cfg.action.is_diagonal:
        basis = hh_skew_basis(cfg.action, args.m, args.cap)
    else:
        raise UsageError("basis enumeration needs a diagonal action")
    result = [term for x in basis for term in cochain_terms(x)]
    return "ok", result, {"count": len(basis)}, [format_cochain(x) for x in basis]


def _bracket(cfg: Config, alpha, beta, method: str):
    if cfg.action is None:
        return bracket_closed(alpha, beta) if method == "closed" else bracket_pipeline(alpha, beta)
    if method == "closed":
        if not cfg.action.is_diagonal:
            raise UsageError("the closed bracket needs a diagonal action; use --method pipeline")
        return bracket_skew_closed(cfg.action, alpha, beta)
    return bracket_skew_pipeline(cfg.action, alpha, beta)


def cmd_bracket(cfg: Config, args) -> tuple:
    alpha = parse_cocycle(args.alpha, cfg.ctx, cfg.group)
    beta = parse_cocycle(args.beta, cfg.ctx, cfg.group)
    methods = ["closed", "pipeline"] if args.method == "both" else [args.method]
    if cfg.action is not None and "closed" in methods and not cfg.action.is_diagonal:
        raise UsageError("the closed bracket needs a diagonal action; use --method pipeline")
    values = {m: _bracket(cfg, alpha, beta, m) for m in methods}
    value = values[methods[-1]]
    checks: dict = {}
    status = "ok"
    lines = [format_cochain(value)]
    if cfg.action is not None:
        lines.insert(0, "(bracket of the Reynolds images)")
        checks["invariant_inputs"] = reynolds(cfg.action, alpha) == alpha and reynolds(cfg.action, beta) == beta
    if args.method == "both":
        equal = values["closed"] == values["pipeline"]
        checks["equal"] = equal
        lines.append(f"closed = pipeline: {equal}")
        if not equal:
            status = "fail"
            lines.append(f"closed:   {format_cochain(values['closed'])}")
    return status, cochain_terms(value), checks, lines


def cmd_lift(cfg: Config, args) -> tuple:
    ctx = cfg.ctx
    if args.map == "phi":
        gen = _parse_wedge_input(args.input, ctx.n)
        if len(gen) != args.degree:
            raise UsageError(f"input has degree {len(gen)}, expected {args.degree}")
        source = KoszulElem.generator(ctx, gen)
        closed = chainmaps.phi_map(source)
        lifted = chainmaps.lift(chainmaps.koszul_to_bar_engine(), source)
    else:
        coeff, word = _parse_word_input(args.input, ctx)
        if len(word) != args.degree:
            raise UsageError(f"input has degree {len(word)}, expected {args.degree}")
        source = BarElem.generator(ctx, word, coeff=coeff)
        closed = chainmaps.psi_map(source)
        lifted = chainmaps.lift(chainmaps.bar_to_koszul_engine(), source)
    equal = closed == lifted
    lines = [repr(closed), f"recursive lift agrees: {equal}"]
    return ("ok" if equal else "fail"), resolution_terms(closed), {"lift_equal": equal}, lines


def _parse_wedge_input(text: str, n: int) -> tuple:
    """A Koszul generator given by increasing 1-based indices, e.g. "1,2"."""
    text = text.strip()
    if not text:
        return ()
    indices = []
    position = 0
    for piece in text.split(","):
        stripped = piece.strip()
        if not stripped.isdigit() or not 1 <= int(stripped) <= n:
            raise ParseError(f"expected an index in 1..{n}, found {stripped!r}", position, text)
        indices.append(int(stripped) - 1)
        position += len(piece) + 1
    if indices != sorted(set(indices)):
        raise ParseError("indices must be strictly increasing", 0, text)
    return tuple(indices)


def _parse_word_input(text: str, ctx) -> tuple:
    """A bar word such as "x1^2 | x1*x2"; returns (coefficient, word)."""
    coeff = ctx.one
    word = []
    if not text.strip():
        return coeff, ()
    offset = 0
    for piece in text.split("|"):
        try:
            c, mono = parse_monomial(piece, ctx)
        except ParseError as exc:
            raise ParseError(exc.message, exc.position + offset, text) from None
        if not any(mono):
            raise ParseError("bar word entries must be nonconstant", offset, text)
        coeff = coeff * c
        word.append(mono)
        offset += len(piece) + 1
    return coeff, tuple(word)


def cmd_dq(cfg: Config, args) -> tuple:
    ctx = cfg.ctx
    if not 1 <= args.i <= ctx.n:
        raise UsageError(f"--i must lie in 1..{ctx.n}")
    coeff, mono = parse_monomial(args.mono, ctx)
    value = chainmaps.dq(args.i - 1, mono, ctx).scale(coeff)
    lines = [" + ".join(f"({c})*{format_monomial(u)}|{format_monomial(v)}" for (u, v), c in value.sorted_items())
             or "0"]
    return "ok", envelope_terms(value), {}, lines


COMMANDS = {"verify": cmd_verify, "basis": cmd_basis, "bracket": cmd_bracket, "lift": cmd_lift, "dq": cmd_dq}


# ---------------------------------------------------------------------------
# argument handling

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON configuration file")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print a JSON report")

    parser = argparse.ArgumentParser(prog="qsym", parents=[common],
                                     description="Hochschild cohomology and brackets of quantum symmetric algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")

    basis = sub.add_parser("basis", parents=[common], help="list the cohomology basis")
    basis.add_argument("-m", type=int, required=True, help="cohomological degree")
    basis.add_argument("--cap", type=int, required=True, help="largest polynomial degree")

    bracket = sub.add_parser("bracket", parents=[common], help="bracket two cochains")
    bracket.add_argument("--alpha", required=True)
    bracket.add_argument("--beta", required=True)
    bracket.add_argument("--method", choices=["closed", "pipeline", "both"], default="both")

    lift = sub.add_parser("lift", parents=[common], help="compare a comparison map with its recursive lift")
    lift.add_argument("--map", choices=["phi", "psi"], required=True)
    lift.add_argument("--degree", type=int, required=True)
    lift.add_argument("--input", required=True,
                      help='phi: wedge indices like "1,2"; psi: a bar word like "x1^2 | x2"')

    dq = sub.add_parser("dq", parents=[common], help="quantum difference quotient")
    dq.add_argument("--i", type=int, required=True)
    dq.add_argument("--mono", required=True)
    return parser


def _emit(as_json: bool, status: str, result: list, checks: dict, lines: list, stream=None) -> None:
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps({"status": status, "result": result, "checks": checks}, sort_keys=True) + "\n")
    else:
        stream.write("\n".join(lines) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    as_json = getattr(args, "json", False)
    try:
        cfg = load_config(getattr(args, "config", None))
        status, result, checks, lines = COMMANDS[args.command](cfg, args)
    except (ConfigError, ParseError, UsageError) as exc:
        kind = "config" if isinstance(exc, ConfigError) else "input"
        if as_json:
            _emit(True, "error", [], {"error": f"{kind}: {exc}"}, [])
        else:
            sys.stderr.write(f"qsym: {kind} error: {exc}\n")
        return EXIT_USAGE
    _emit(as_json, status, result, checks, lines)
    return EXIT_OK if status == "ok" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
