"""Command line front end.

Three modes: `sup` and `inf` bound the value of a formula over a model's
language, `value` evaluates a formula on one lasso word.  Results print
as `key: value` lines, or as JSON with --json; both renderings carry the
same fields.

Exit codes: 0 finite bound or computed value, 1 usage or input error,
2 unbounded, 3 infinite inf, 4 oracle cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Any

from . import oracle
from .automaton import to_dot, value_on_lasso
from .cegar import BoundResult, compute_inf_bound, compute_sup_bound
from .formula import (
    COST_GT,
    COST_LE,
    LTL,
    MIXED,
    FragmentError,
    classify_fragment,
    format_formula,
    negate_dual,
    parse_formula,
)
from .model import load_model
from .translate import build_counter_automaton, prune_dominated
from .words import ABOVE_CAP, NO_RUN, parse_lasso


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract here is exit 1.
    def error(self, message):
        raise _UsageError(message)


class Report:
    """Ordered result fields with one human and one JSON rendering."""

    def __init__(self, fields: dict[str, Any]):
        self.fields = dict(fields)

    def to_dict(self) -> dict[str, Any]:
        return dict(self.fields)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Report":
        return cls(data)

    def to_json(self) -> str:
        return json.dumps(self.fields, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        lines = []
        for key, val in self.fields.items():
            if key == "trace":
                lines.append("trace:")
                for row in val:
                    lines.append(
                        "  {kind} n={n} p={p} states={automaton_states}"
                        " product={product_states}/{product_transitions}"
                        " word={word}".format(
                            **{k: _human(v) for k, v in row.items()}
                        )
                    )
            else:
                lines.append(f"{key}: {_human(val)}")
        return "\n".join(lines)


def _human(val) -> str:
    if val is None:
        return "none"
    return str(val)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cltlbound",
        description="Bound or evaluate counting LTL formulas over omega-automata.",
    )
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("-f", "--formula", help="formula text")
    src.add_argument("--formula-file", help="read the formula from a file")
    parser.add_argument(
        "--mode", required=True, choices=("sup", "inf", "value"),
        help="bound direction, or 'value' for one word",
    )
    parser.add_argument("-m", "--model", help="model file (sup and inf modes)")
    parser.add_argument(
        "--word", help="lasso word such as '{a} {} | {a} {b}' (value mode)"
    )
    parser.add_argument(
        "--cutoff", type=int,
        help="override the search cutoff, or the evaluation cap in value mode",
    )
    parser.add_argument(
        "--witness", action="store_true",
        help="include the witness word in the report",
    )
    parser.add_argument(
        "--trace", action="store_true",
        help="include per-pass search statistics in the report",
    )
    parser.add_argument(
        "--oracle-check", action="store_true",
        help="cross-check the result along an independent route; exit 4 on mismatch",
    )
    parser.add_argument(
        "--dot", metavar="PATH",
        help="also write the formula's automaton in DOT form",
    )
    parser.add_argument("--json", action="store_true", help="JSON output")
    return parser


def _trace_rows(result: BoundResult) -> list[dict[str, Any]]:
    rows = []
    for row in result.trace:
        p: Any = row.p
        if isinstance(p, float) and math.isinf(p):
            p = "infinite"
        rows.append(
            {
                "kind": row.kind,
                "n": row.n,
                "p": p,
                "automaton_states": row.automaton_states,
                "product_states": row.product_states,
                "product_transitions": row.product_transitions,
                "word": None if row.word is None else str(row.word),
            }
        )
    return rows


def _check_bound(mode: str, phi, result: BoundResult) -> str:
    frag = classify_fragment(phi)
    witness = result.witness
    if witness is None:
        # Empty model language, or infinite inf: nothing to evaluate.
        return "ok"
    if result.outcome == "finite":
        cap = result.bound + 2
        if mode == "inf" or frag == COST_LE:
            got = oracle.value_inf(phi, witness, cap)
            want = result.bound
        elif frag == COST_GT:
            got = oracle.value_sup(phi, witness, cap)
            want = result.bound
        else:
            # A 0 sup of a plain formula promises the witness falsifies it.
            got = oracle.value_sup(phi, witness, 1)
            want = 0
        if got is ABOVE_CAP or got != want:
            return f"mismatch: witness value {got!r}, expected {want}"
        return "ok"
    # Unbounded: the last pass accepted the witness at threshold n, which
    # certifies a value beyond n on the matching side.
    t = result.trace[-1].n + 1
    if frag == COST_LE:
        got = oracle.value_inf(phi, witness, t)
    else:
        got = oracle.value_sup(phi, witness, t)
    if got is not ABOVE_CAP:
        return f"mismatch: witness value {got!r} below threshold {t}"
    return "ok"


def _check_value(phi, frag: str, word, cap: int, val) -> str:
    if frag == LTL:
        side = value_on_lasso(_formula_automaton(phi), word, 1)
        if val == 0:
            ok = side is ABOVE_CAP
        else:
            ok = side is NO_RUN
        return "ok" if ok else f"mismatch: automaton route says {side!r}"
    if frag == COST_GT:
        side = value_on_lasso(_formula_automaton(phi), word, cap)
        expect = val
    else:
        side = value_on_lasso(_formula_automaton(negate_dual(phi)), word, cap)
        expect = ABOVE_CAP if val is ABOVE_CAP else max(0, val - 1)
    if side is NO_RUN:
        side = 0
    if (side is ABOVE_CAP) != (expect is ABOVE_CAP) or (
        side is not ABOVE_CAP and side != expect
    ):
        return f"mismatch: automaton route says {side!r}, expected {expect!r}"
    return "ok"


def _formula_automaton(phi):
    return prune_dominated(build_counter_automaton(phi))


def _run_bound(args, phi) -> tuple[Report, int]:
    if args.model is None:
        raise _UsageError(f"--mode {args.mode} needs --model")
    if args.word is not None:
        raise _UsageError("--word only applies to --mode value")
    model = load_model(args.model)
    start = time.perf_counter()
    if args.mode == "sup":
        result = compute_sup_bound(model, phi, args.cutoff)
    else:
        result = compute_inf_bound(model, phi, args.cutoff)
    elapsed = round(time.perf_counter() - start, 6)

    fields: dict[str, Any] = {
        "mode": args.mode,
        "formula": format_formula(phi),
        "model": args.model,
        "outcome": result.outcome,
        "bound": result.bound,
        "iterations": result.iterations,
        "cutoff": result.cutoff,
    }
    if args.witness:
        fields["witness"] = None if result.witness is None else str(result.witness)
    if args.trace:
        fields["trace"] = _trace_rows(result)
    code = {"finite": 0, "unbounded": 2, "infinite-inf": 3}[result.outcome]
    if args.oracle_check:
        verdict = _check_bound(args.mode, phi, result)
        fields["oracle"] = verdict
        if verdict != "ok":
            code = 4
    fields["seconds"] = elapsed
    return Report(fields), code


def _run_value(args, phi) -> tuple[Report, int]:
    if args.word is None:
        raise _UsageError("--mode value needs --word")
    if args.model is not None:
        raise _UsageError("--model only applies to --mode sup and inf")
    word = parse_lasso(args.word)
    cap = args.cutoff
    if cap is None:
        cap = len(word.prefix) + 2 * len(word.cycle) + 4
    frag = classify_fragment(phi)
    if frag == MIXED:
        raise FragmentError("cannot evaluate a formula mixing U<= and R>")
    start = time.perf_counter()
    if frag == COST_LE:
        val = oracle.value_inf(phi, word, cap)
    elif frag == COST_GT:
        val = oracle.value_sup(phi, word, cap)
    else:
        val = 0 if oracle.eval_ltl_on_lasso(phi, word) else "infinite"
    elapsed = round(time.perf_counter() - start, 6)

    fields: dict[str, Any] = {
        "mode": "value",
        "formula": format_formula(phi),
        "word": str(word),
        "cap": cap,
        "value": "above-cap" if val is ABOVE_CAP else val,
    }
    code = 0
    if args.oracle_check:
        verdict = _check_value(phi, frag, word, cap, val)
        fields["oracle"] = verdict
        if verdict != "ok":
            code = 4
    fields["seconds"] = elapsed
    return Report(fields), code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.formula is not None:
            text = args.formula
        else:
            with open(args.formula_file, "r", encoding="utf-8") as handle:
                text = handle.read()
        phi = parse_formula(text)
        if args.dot is not None:
            shown = negate_dual(phi) if classify_fragment(phi) == COST_LE else phi
            with open(args.dot, "w", encoding="utf-8") as handle:
                handle.write(to_dot(_formula_automaton(shown)))
        if args.mode == "value":
            report, code = _run_value(args, phi)
        else:
            report, code = _run_bound(args, phi)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(report.to_json() if args.json else report.render())
    return code


if __name__ == "__main__":
    raise SystemExit(main())
