"""Command line surface: ``leg COMMAND [flags]``.

Commands
    inv        classical invariants of a front word
    rulings    normal rulings and the ruling polynomial
    move       apply moves to a front word
    trace      replay and summarize a cobordism trace file
    wh         clasped double of a knot front with its genus-1 filling
    braid      positive braid closure, optionally with the filling trace
    plan       block realization plan for a count polynomial (JSON)
    tb         classical invariant read off a count polynomial
    compat     duality compatibility and splittings of a count polynomial
    gf-front   fiber-critical samples of a generating family
    gf-chords  chord enumeration with the duality audit
    gf-spin    rotate a 1-d generating family about its vertical axis
    gf-check   filling interpolation conditions, optional embeddedness run

Input grammars: a front word is whitespace-separated ``L<h> X<h> R<h>``
tokens, a braid word is comma-separated generator indices, a polynomial
is a signed sum of ``c*t^d`` terms.  Every command prints key-value
text by default or a JSON document under ``--json``; front pictures go
to ``--svg PATH``.  Exit codes: 0 success, 1 domain error (the output
document is a single error field), 2 usage error.  Output is
deterministic for fixed inputs; configuration is flags only.
"""

import argparse
import json
import math
from fractions import Fraction

import numpy as np

from .braids import BraidWord, closure_report
from .errors import DomainError
from .exactseq import filling_polynomial
from .geography import Block, RealizationPlan, realize
from .geography import _incompat_reason as incompat_reason
from .gfnum import (embeddedness_check, fiber_critical_set,
                    fiber_regularity_margin, fish_family, format_gf_file,
                    immersed_filling_family, linear_family, parse_gf_file,
                    reeb_chords, scaled_unknot_family, shifted_unknot_family,
                    spin, stacked_pair_family, unknot_family)
from .front import classical_invariants, parse_front
from .laurent import decompose, is_connected_form, parse_poly, \
    tb_from_polynomial
from .moves import apply_move, format_trace, parse_move, parse_trace, \
    trace_summary
from .render import render_points_svg, render_svg
from .rulings import enumerate_rulings, ruling_polynomial
from .whitehead import whitehead_double

_FAMILIES = {
    "unknot": unknot_family,
    "scaled-unknot": scaled_unknot_family,
    "shifted-unknot": shifted_unknot_family,
    "linear": linear_family,
    "fish": fish_family,
    "stacked-pair": stacked_pair_family,
    "saucer": lambda: spin(unknot_family()),
}


def _fmt(v):
    """One value as text: floats trimmed, lists comma-joined, booleans
    lowercase, None a dash.

    >>> _fmt([0, -1]), _fmt(Fraction(3, 2)), _fmt(True), _fmt(None)
    ('0,-1', '3/2', 'true', '-')
    """
    if v is None:
        return "-"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.10g" % v
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v) if len(v) else "-"
    return str(v)


def _kv(pairs):
    return [f"{k} {_fmt(v)}" for k, v in pairs]


def _jsonable(v):
    """Strict-JSON copy: non-finite floats become strings, fractions and
    other objects their text form, keys stay strings."""
    if v is None or isinstance(v, (bool, str, int)):
        return v
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    return str(v)


def _dump(doc):
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise DomainError(f"cannot read {path}: {e.strerror or e}")


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise DomainError(f"cannot write {path}: {e.strerror or e}")


def _csv_ints(text, what):
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise DomainError(
            f"bad {what} {text!r}: expected comma-separated integers")


def _maybe_svg(args, diagram):
    if getattr(args, "svg", None):
        _write(args.svg, render_svg(diagram))


def _load_family(args):
    if args.file:
        return parse_gf_file(_read(args.file))
    return _FAMILIES[args.family]()


def _single_piece(fam, what):
    if not hasattr(fam, "core"):
        raise DomainError(
            f"{what} needs a single-piece family; a composite has no "
            "single polynomial core")
    return fam


# --- command handlers --------------------------------------------------
# Each returns (text lines, JSON document).

def cmd_inv(args):
    d = parse_front(args.front)
    info = classical_invariants(d, _csv_ints(args.reverse, "--reverse"))
    _maybe_svg(args, d)
    doc = {"word": d.word, **info}
    return _kv(doc.items()), doc


def cmd_rulings(args):
    d = parse_front(args.front)
    rus = enumerate_rulings(d, graded=args.graded)
    poly = ruling_polynomial(d, graded=args.graded)
    doc = {"word": d.word, "graded": args.graded, "count": len(rus),
           "polynomial": str(poly), "rulings": [list(r) for r in rus]}
    lines = _kv([("word", d.word), ("graded", args.graded),
                 ("count", len(rus)), ("polynomial", poly)])
    lines += [f"ruling {_fmt(list(r))}" for r in rus]
    return lines, doc


def cmd_move(args):
    d = parse_front(args.front)
    for text in args.move:
        d = apply_move(d, parse_move(text), gf_mode=args.gf)
    _maybe_svg(args, d)
    doc = {"word": d.word, "moves": len(args.move)}
    return _kv(doc.items()), doc


def cmd_trace(args):
    trace = parse_trace(_read(args.file), gf_mode=args.gf)
    s = trace_summary(trace)
    end = s.pop("end")
    _maybe_svg(args, end)
    doc = {"start": trace.start.word, "end": end.word,
           "moves": len(trace.moves), **s}
    return _kv(doc.items()), doc


def cmd_wh(args):
    base = parse_front(args.front)
    diagram, trace = whitehead_double(base, gf_mode=not args.no_gf)
    s = trace_summary(trace)
    inv = classical_invariants(diagram)
    fill = filling_polynomial(int(s["genus"]), inv["components"])
    _maybe_svg(args, diagram)
    doc = {"word": diagram.word, "tb": inv["tb"],
           "rotation": inv["rotation"], "components": inv["components"],
           "genus": s["genus"], "moves": len(trace.moves),
           "filling_polynomial": str(fill)}
    if args.out:
        _write(args.out, format_trace(trace))
        doc["trace"] = args.out
    return _kv(doc.items()), doc


def cmd_braid(args):
    letters = _csv_ints(args.word, "braid word")
    rep = closure_report(BraidWord(args.strands, letters))
    d = rep["diagram"]
    _maybe_svg(args, d)
    doc = {"word": d.word, "strands": args.strands, "letters": letters,
           "components": d.n_components, "cycles": rep["cycles"],
           "chi": rep["chi"], "genus": rep["genus"],
           "connected": rep["connected"], "flags": rep["flags"]}
    lines = _kv((k, v) for k, v in doc.items() if k != "flags")
    lines += [f"flag {f}" for f in rep["flags"]]
    if args.fill or args.out:
        path = args.out or "braid.trace"
        _write(path, format_trace(rep["trace"]))
        doc["trace"] = path
        lines.append(f"trace {path}")
    return lines, doc


def _load_plan(path):
    try:
        data = json.loads(_read(path))
    except ValueError as e:
        raise DomainError(f"plan file is not valid JSON: {e}")
    for key in ("n", "target", "blocks"):
        if not isinstance(data, dict) or key not in data:
            raise DomainError(f"plan file missing field {key!r}")
    n = data["n"]
    target = parse_poly(data["target"])
    blocks = []
    for b in data["blocks"]:
        if not isinstance(b, dict) or "kind" not in b:
            raise DomainError("plan block missing field 'kind'")
        blocks.append(Block(b["kind"], n, b.get("a")))
    plan = RealizationPlan(n, blocks, target)
    if not plan.verified():
        raise DomainError(
            f"plan does not re-validate: blocks recompose to "
            f"{plan.recomposed}, target is {target}")
    return plan


def cmd_plan(args):
    if args.verify:
        plan = _load_plan(args.verify)
        doc = {"file": args.verify, "n": plan.n, "target": str(plan.target),
               "recomposed": str(plan.recomposed),
               "blocks": len(plan.blocks), "verified": True}
        return _kv(doc.items()), doc
    plan = realize(parse_poly(args.poly), args.dim,
                   sphere_only=args.sphere_only)
    doc = plan.to_dict()
    text = _dump(doc)
    if args.out:
        _write(args.out, text + "\n")
    return [text], doc


def cmd_tb(args):
    if args.dim < 1:
        raise DomainError(f"dimension must be >= 1, got {args.dim}")
    poly = parse_poly(args.poly)
    val = tb_from_polynomial(poly, args.dim)
    return [str(val)], {"dim": args.dim, "poly": str(poly), "tb": val}


def cmd_compat(args):
    poly = parse_poly(args.poly)
    splits = decompose(poly, args.dim)
    doc = {"dim": args.dim, "poly": str(poly),
           "compatible": bool(splits),
           "connected_form": is_connected_form(poly, args.dim),
           "splittings": [{"q": str(q), "p": str(p)} for q, p in splits]}
    lines = _kv([("dim", args.dim), ("poly", poly),
                 ("compatible", doc["compatible"]),
                 ("connected_form", doc["connected_form"]),
                 ("splittings", len(splits))])
    lines += [f"split q={q}; p={p}" for q, p in splits]
    if not splits:
        doc["reason"] = incompat_reason(poly, args.dim)
        lines.append(f"reason {doc['reason']}")
    return lines, doc


def cmd_gf_front(args):
    fam = _load_family(args)
    pts = fiber_critical_set(fam, step=args.step)
    margin = fiber_regularity_margin(fam, pts) if pts else None
    if args.svg:
        _write(args.svg, render_points_svg(pts))
    doc = {"n": fam.n, "N": fam.N, "R": fam.R, "count": len(pts),
           "regularity_margin": margin,
           "points": [{"x": list(q.x), "eta": list(q.eta), "z": q.z,
                       "p": list(q.p)} for q in pts]}
    lines = _kv([("n", fam.n), ("N", fam.N), ("R", fam.R),
                 ("count", len(pts)), ("regularity_margin", margin)])
    lines += [f"point x {_fmt(list(q.x))} eta {_fmt(list(q.eta))} "
              f"z {_fmt(q.z)} p {_fmt(list(q.p))}" for q in pts]
    return lines, doc


def cmd_gf_chords(args):
    fam = _load_family(args)
    chords, gamma, report = reeb_chords(fam, step=args.step)
    doc = {"count": len(chords), "gamma": str(gamma),
           "chords": [c.to_dict() for c in chords], "report": report}
    lines = _kv([("count", len(chords)), ("gamma", gamma),
                 ("epsilon", report["epsilon"]), ("omega", report["omega"]),
                 ("chain_level_only", report["chain_level_only"])])
    for c in chords:
        x, e1, e2 = c.coords
        lines.append(
            f"chord value {_fmt(c.value)} index {c.index} degree "
            f"{c.degree} margin {_fmt(c.min_abs_hessian_eigenvalue)} "
            f"x {_fmt(list(x))} eta {_fmt(list(e1))} eta~ {_fmt(list(e2))}")
    lines += [f"warning {w}" for w in report["warnings"]]
    lines += [f"tolerance {k} {_fmt(v)}"
              for k, v in sorted(report["tolerances"].items())]
    return lines, doc


def cmd_gf_spin(args):
    fam = _single_piece(_load_family(args), "spin")
    spun = spin(fam)
    text = format_gf_file(spun)
    if args.out:
        _write(args.out, text)
    doc = {"n": spun.n, "N": spun.N, "R": spun.R,
           "core": spun.core.format(spun.var_names()),
           "tail": list(spun.tail), "gf_file": text}
    return [text.rstrip("\n")], doc


def cmd_gf_check(args):
    fam = _single_piece(_load_family(args), "the filling interpolation")
    filling = immersed_filling_family(fam, t_plus=args.t_plus)
    rep = filling.report
    doc = {"filling": rep, "ok": all(rep["conditions"].values())}
    lines = _kv([("eps_G", rep["eps_G"]), ("t_minus", rep["t_minus"]),
                 ("t_plus", rep["t_plus"]),
                 ("regularity_margin", rep["regularity_margin"])])
    lines += [f"condition {name} {'pass' if good else 'fail'}"
              for name, good in rep["conditions"].items()]
    lines += [f"tolerance {k} {_fmt(v)}"
              for k, v in sorted(rep["tolerances"].items())]
    lines += _kv([("ok", doc["ok"])])
    if args.embedded:
        t_end = args.t_end if args.t_end is not None else args.t_plus
        emb = embeddedness_check(filling.slice_family, args.t_start, t_end)
        doc["embeddedness"] = emb
        lines += _kv([("h", emb["h"]), ("max_dt", emb["max_dt"]),
                      ("slowdown", emb["slowdown"]),
                      ("embedded_ok", emb["ok"])])
    return lines, doc


_HANDLERS = {
    "inv": cmd_inv,
    "rulings": cmd_rulings,
    "move": cmd_move,
    "trace": cmd_trace,
    "wh": cmd_wh,
    "braid": cmd_braid,
    "plan": cmd_plan,
    "tb": cmd_tb,
    "compat": cmd_compat,
    "gf-front": cmd_gf_front,
    "gf-chords": cmd_gf_chords,
    "gf-spin": cmd_gf_spin,
    "gf-check": cmd_gf_check,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="leg",
        description="Legendrian fronts, cobordism traces, realization "
                    "plans, and generating-family numerics.")
    sub = parser.add_subparsers(dest="cmd", metavar="COMMAND", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a JSON document instead of "
                             "key-value text")
    common.add_argument("--threads", type=int, default=1, metavar="K",
                        help="cap worker threads (all current operations "
                             "run single-threaded)")

    svg = argparse.ArgumentParser(add_help=False)
    svg.add_argument("--svg", metavar="PATH",
                     help="also draw the result as SVG 1.1")

    front = argparse.ArgumentParser(add_help=False)
    front.add_argument("--front", required=True, metavar="WORD",
                       help="front word, e.g. 'L1 L2 X3 X3 X3 R2 R1'")

    gfsrc = argparse.ArgumentParser(add_help=False)
    src = gfsrc.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", metavar="PATH",
                     help="gf-file with n=, N=, core=, tail=, R= lines")
    src.add_argument("--family", choices=sorted(_FAMILIES),
                     help="built-in sample family")

    p = sub.add_parser("inv", parents=[common, svg, front],
                       help="classical invariants of a front word")
    p.add_argument("--reverse", default="", metavar="CSV",
                   help="component indices to orientation-reverse")

    p = sub.add_parser("rulings", parents=[common, front],
                       help="normal rulings and the ruling polynomial")
    p.add_argument("--graded", action="store_true",
                   help="keep only switches of equal Maslov potential")

    p = sub.add_parser("move", parents=[common, svg, front],
                       help="apply moves to a front word")
    p.add_argument("--move", action="append", required=True,
                   metavar="'KIND ARGS'",
                   help="move line, repeatable, applied in order")
    p.add_argument("--gf", action="store_true",
                   help="enforce the pinch grading checks")

    p = sub.add_parser("trace", parents=[common, svg],
                       help="replay and summarize a cobordism trace file")
    p.add_argument("file",
                   help="trace file: start word line, then one move "
                        "per line")
    p.add_argument("--gf", action="store_true",
                   help="enforce the pinch grading checks")

    p = sub.add_parser("wh", parents=[common, svg, front],
                       help="clasped double of a knot front with its "
                            "genus-1 filling trace")
    p.add_argument("--no-gf", action="store_true",
                   help="skip the rotation and grading gates")
    p.add_argument("--out", metavar="PATH",
                   help="write the filling trace file")

    p = sub.add_parser("braid", parents=[common, svg],
                       help="positive braid closure and its filling")
    p.add_argument("--strands", type=int, required=True, metavar="S")
    p.add_argument("--word", required=True, metavar="CSV",
                   help="generator indices, e.g. 2,1")
    p.add_argument("--fill", action="store_true",
                   help="emit the filling trace file")
    p.add_argument("--out", metavar="PATH",
                   help="trace file path (default braid.trace, "
                        "implies --fill)")

    p = sub.add_parser("plan", parents=[common],
                       help="block realization plan for a count "
                            "polynomial (JSON)")
    p.add_argument("--dim", type=int, metavar="N")
    p.add_argument("--poly", metavar="P",
                   help="count polynomial, e.g. 't^3 + t^2'")
    p.add_argument("--sphere-only", action="store_true",
                   help="allow only sphere blocks besides the top class")
    p.add_argument("--out", metavar="PATH", help="write the plan JSON")
    p.add_argument("--verify", metavar="PATH",
                   help="re-validate an emitted plan file instead "
                        "of planning")

    p = sub.add_parser("tb", parents=[common],
                       help="classical invariant read off a count "
                            "polynomial")
    p.add_argument("--dim", type=int, required=True, metavar="N")
    p.add_argument("--poly", required=True, metavar="P")

    p = sub.add_parser("compat", parents=[common],
                       help="duality compatibility and splittings of a "
                            "count polynomial")
    p.add_argument("--dim", type=int, required=True, metavar="N")
    p.add_argument("--poly", required=True, metavar="P")

    p = sub.add_parser("gf-front", parents=[common, svg, gfsrc],
                       help="fiber-critical samples of a generating "
                            "family")
    p.add_argument("--step", type=float, default=0.05, metavar="H",
                   help="base grid step")

    p = sub.add_parser("gf-chords", parents=[common, gfsrc],
                       help="chord enumeration with the duality audit")
    p.add_argument("--step", type=float, default=0.05, metavar="H",
                   help="base grid step")

    p = sub.add_parser("gf-spin", parents=[common, gfsrc],
                       help="rotate a 1-d generating family about its "
                            "vertical axis")
    p.add_argument("--out", metavar="PATH",
                   help="write the spun family as a gf-file")

    p = sub.add_parser("gf-check", parents=[common, gfsrc],
                       help="filling interpolation conditions, optional "
                            "embeddedness run")
    p.add_argument("--t-plus", type=float, default=3.0, metavar="T",
                   help="time after which the slice is exactly the "
                        "scaled family")
    p.add_argument("--embedded", action="store_true",
                   help="also run the chord-length inequality along "
                        "the slice path")
    p.add_argument("--t-start", type=float, default=2.0, metavar="A",
                   help="first time of the embeddedness run")
    p.add_argument("--t-end", type=float, default=None, metavar="B",
                   help="last time of the embeddedness run "
                        "(default t-plus)")

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error(f"--threads must be >= 1, got {args.threads}")
    if args.cmd == "plan" and not args.verify \
            and (args.dim is None or args.poly is None):
        parser.error("plan needs --dim and --poly (or --verify PATH)")
    try:
        lines, doc = _HANDLERS[args.cmd](args)
    except DomainError as e:
        if args.json:
            print(json.dumps({"error": str(e)}, sort_keys=True))
        else:
            print(f"error: {e}")
        return 1
    if args.json:
        print(_dump(doc))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
