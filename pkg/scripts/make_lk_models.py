#!/usr/bin/env python3
"""Regenerate models/L0.model .. L8.model.

L_k accepts the words over {a} whose a-runs are at most k letters long
and end infinitely often: state i counts the current run, one more a in
state k falls into a rejecting trap.
"""

import os

OUT = os.path.join(os.path.dirname(__file__), os.pardir, "models")


def render(k: int) -> str:
    trap = k + 1
    lines = [
        f"# a-runs of length at most {k}; the run of exactly {k} is reachable",
        "ap: a",
        f"states: {k + 2}",
        "init: 0",
        "accsets: 1",
    ]
    for i in range(k):
        lines.append(f"trans: {i} {i + 1} a {{}}")
    lines.append(f"trans: {k} {trap} a {{}}")
    for i in range(k + 1):
        lines.append(f"trans: {i} 0 !a {{0}}")
    lines.append(f"trans: {trap} {trap} true {{}}")
    return "\n".join(lines) + "\n"


def main() -> None:
    for k in range(9):
        path = os.path.join(OUT, f"L{k}.model")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(render(k))
        print("wrote", os.path.normpath(path))


if __name__ == "__main__":
    main()
