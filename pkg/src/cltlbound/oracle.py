"""Reference evaluation on lasso words, straight from the semantics.

This module is the ground truth the rest of the pipeline is tested
against, so it stays independent of the automaton machinery: plain LTL is
evaluated by fixpoint tables over the finitely many lasso positions, and
counting values are found by scanning the unfolded instances.
"""

from __future__ import annotations

from .formula import (
    COST_GT,
    COST_LE,
    LTL,
    And,
    FalseF,
    Formula,
    FragmentError,
    Lit,
    Next,
    Or,
    Release,
    TrueF,
    Until,
    classify_fragment,
    instantiate,
)
from .words import ABOVE_CAP, LassoWord


def eval_ltl_on_lasso(phi: Formula, word: LassoWord) -> bool:
    """Does the lasso word satisfy the plain LTL formula at position 0?"""
    if classify_fragment(phi) != LTL:
        raise FragmentError("lasso evaluation handles plain LTL only")
    pre = len(word.prefix)
    total = word.positions()
    letters = [word.letter(i) for i in range(total)]
    memo: dict[int, list[bool]] = {}
    return _table(phi, letters, pre, memo)[0]


def _table(phi: Formula, letters, pre: int, memo) -> list[bool]:
    got = memo.get(id(phi))
    if got is not None:
        return got
    total = len(letters)
    if isinstance(phi, TrueF):
        out = [True] * total
    elif isinstance(phi, FalseF):
        out = [False] * total
    elif isinstance(phi, Lit):
        out = [(phi.name in letters[i]) == phi.positive for i in range(total)]
    elif isinstance(phi, And):
        l = _table(phi.left, letters, pre, memo)
        r = _table(phi.right, letters, pre, memo)
        out = [a and b for a, b in zip(l, r)]
    elif isinstance(phi, Or):
        l = _table(phi.left, letters, pre, memo)
        r = _table(phi.right, letters, pre, memo)
        out = [a or b for a, b in zip(l, r)]
    elif isinstance(phi, Next):
        v = _table(phi.operand, letters, pre, memo)
        out = [v[i + 1] if i + 1 < total else v[pre] for i in range(total)]
    elif isinstance(phi, Until):
        out = _fixpoint(phi, letters, pre, memo, least=True)
    elif isinstance(phi, Release):
        out = _fixpoint(phi, letters, pre, memo, least=False)
    else:
        raise FragmentError("lasso evaluation handles plain LTL only")
    memo[id(phi)] = out
    return out


def _fixpoint(phi, letters, pre: int, memo, least: bool) -> list[bool]:
    """Until is the least, Release the greatest solution of the one-step
    unrolling.  Two backward sweeps of the cycle reach the fixpoint: the
    first settles windows inside one turn, the second carries the
    wrap-around, and no satisfying (or violating) window needs more."""
    a = _table(phi.left, letters, pre, memo)
    b = _table(phi.right, letters, pre, memo)
    total = len(letters)
    x = [not least] * total
    for _ in range(2):
        for i in range(total - 1, pre - 1, -1):
            nxt = pre if i == total - 1 else i + 1
            if least:
                x[i] = b[i] or (a[i] and x[nxt])
            else:
                x[i] = b[i] and (a[i] or x[nxt])
    for i in range(pre - 1, -1, -1):
        if least:
            x[i] = b[i] or (a[i] and x[i + 1])
        else:
            x[i] = b[i] and (a[i] or x[i + 1])
    return x


def value_inf(phi: Formula, word: LassoWord, cap: int):
    """Min-counting value: the least n with word |= phi[n], scanning up to
    cap; ABOVE_CAP when none is satisfied below it."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if classify_fragment(phi) not in (LTL, COST_LE):
        raise FragmentError("value_inf takes a U<= (or plain LTL) formula")
    for n in range(cap + 1):
        if eval_ltl_on_lasso(instantiate(phi, n), word):
            return n
    return ABOVE_CAP


def value_sup(phi: Formula, word: LassoWord, cap: int):
    """Max-counting value: the greatest n with word |= phi[n].

    Satisfaction is downward closed in n, so a binary search finds the
    largest satisfied index; ABOVE_CAP reports satisfaction at cap itself
    (the value is cap or more, possibly infinite).
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if classify_fragment(phi) not in (LTL, COST_GT):
        raise FragmentError("value_sup takes an R> (or plain LTL) formula")
    if eval_ltl_on_lasso(instantiate(phi, cap), word):
        return ABOVE_CAP
    best, lo, hi = 0, 1, cap - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        if eval_ltl_on_lasso(instantiate(phi, mid), word):
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return best
