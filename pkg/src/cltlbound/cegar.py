"""Iterated bound search: sup and inf of a cost formula over a model.

Each pass instantiates the formula at a threshold, translates it,
products it with the model and asks for an accepting lasso.  On the sup
side a found lasso raises the threshold (by the value of its run, when
that is larger); emptiness certifies the current bound.  On the inf side
the scan walks upward until the first nonempty product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .automaton import CounterAutomaton, LassoRun, synchronized_product
from .emptiness import check_lasso_run, find_accepting_lasso
from .formula import (
    COST_LE,
    LTL,
    MIXED,
    And,
    Formula,
    FragmentError,
    classify_fragment,
    instantiate,
    negate_dual,
)
from .translate import build_counter_automaton, prune_dominated
from .words import LassoWord


@dataclass(frozen=True)
class IterationStats:
    kind: str  # "search" or "probe"
    n: int  # threshold checked in this pass
    p: int | float | None  # refined bound, None when the product was empty
    automaton_states: int
    product_states: int
    product_transitions: int
    word: LassoWord | None


@dataclass(frozen=True)
class BoundResult:
    outcome: str  # "finite" | "unbounded" | "infinite-inf"
    bound: int | None
    witness: LassoWord | None
    cutoff: int
    trace: tuple[IterationStats, ...]

    @property
    def iterations(self) -> int:
        return sum(1 for row in self.trace if row.kind == "search")


def run_value(run: LassoRun, aut: CounterAutomaton) -> int | float:
    """Value of an accepting run: its least counter observation, inf if none.

    Two passes over the loop suffice: a counter observed inside the loop
    is also reset there, so its observations repeat from the second pass on.
    """
    check_lasso_run(aut, run)
    vals = [0] * aut.num_counters
    best: int | float = math.inf
    for t in run.stem + run.loop + run.loop:
        for c, acts in enumerate(t.actions):
            for a in acts:
                if a == "i":
                    vals[c] += 1
                elif a == "r":
                    vals[c] = 0
                else:
                    best = min(best, vals[c])
    return best


def _pruned(phi: Formula) -> CounterAutomaton:
    return prune_dominated(build_counter_automaton(phi))


def _fish_word(model: CounterAutomaton) -> LassoWord | None:
    hit = find_accepting_lasso(model)
    return None if hit is None else hit[1]


def compute_sup_bound(
    model: CounterAutomaton, phi: Formula, cutoff: int | None = None
) -> BoundResult:
    """sup of the value of phi over the model's language.

    Formulas in the U<= fragment are answered through the dual search;
    plain LTL works too (the sup is then 0 or unbounded).  Once the
    threshold passes `cutoff` (default: formula automaton states times
    model states) the sup is provably infinite.
    """
    if model.num_counters:
        raise ValueError("the model must not carry counters")
    frag = classify_fragment(phi)
    if frag == MIXED:
        raise FragmentError("cannot bound a formula mixing U<= and R>")
    if frag == COST_LE:
        return _sup_via_dual(model, phi, cutoff)
    return _sup_direct(model, phi, cutoff)


def _sup_direct(model, phi, cutoff):
    limit = cutoff if cutoff is not None else _pruned(phi).num_states * model.num_states
    trace: list[IterationStats] = []
    n = 0
    last_word: LassoWord | None = None
    while True:
        # Conjoining phi itself keeps its counters in the product, so the
        # found run reports a value and the threshold can jump past n+1.
        aut = _pruned(And(phi, instantiate(phi, n + 1)))
        product = synchronized_product(aut, model)
        hit = find_accepting_lasso(product)
        if hit is None:
            trace.append(
                IterationStats(
                    "search", n, None, aut.num_states, product.num_states,
                    len(product.transitions), None,
                )
            )
            if last_word is None:
                last_word = _fish_word(model)
            return BoundResult("finite", n, last_word, limit, tuple(trace))
        run, word = hit
        p = max(run_value(run, product), n + 1)
        trace.append(
            IterationStats(
                "search", n, p, aut.num_states, product.num_states,
                len(product.transitions), word,
            )
        )
        if p > limit:
            return BoundResult("unbounded", None, word, limit, tuple(trace))
        n = p
        last_word = word


def _sup_via_dual(model, phi, cutoff):
    inner = _sup_direct(model, negate_dual(phi), cutoff)
    if inner.outcome == "unbounded":
        return inner
    if inner.bound >= 1:
        return BoundResult(
            "finite", inner.bound + 1, inner.witness, inner.cutoff, inner.trace
        )
    # A dual sup of 0 covers values 0 and 1 alike; one emptiness probe of
    # not(phi[0]) against the model separates them.
    aut = _pruned(negate_dual(instantiate(phi, 0)))
    product = synchronized_product(aut, model)
    hit = find_accepting_lasso(product)
    if hit is None:
        row = IterationStats(
            "probe", 0, 0, aut.num_states, product.num_states,
            len(product.transitions), None,
        )
        return BoundResult(
            "finite", 0, inner.witness, inner.cutoff, inner.trace + (row,)
        )
    word = hit[1]
    row = IterationStats(
        "probe", 0, 1, aut.num_states, product.num_states,
        len(product.transitions), word,
    )
    return BoundResult("finite", 1, word, inner.cutoff, inner.trace + (row,))


def compute_inf_bound(
    model: CounterAutomaton, phi: Formula, cutoff: int | None = None
) -> BoundResult:
    """inf of the value of phi over the model's language.

    Scans thresholds upward until the language of phi[n] meets the model;
    an all-empty scan up to the cutoff means every value is infinite.
    """
    if model.num_counters:
        raise ValueError("the model must not carry counters")
    frag = classify_fragment(phi)
    if frag not in (LTL, COST_LE):
        raise FragmentError("inf bounds apply to the U<= fragment")
    trace: list[IterationStats] = []
    limit = cutoff
    n = 0
    while True:
        if limit is not None and n >= limit:
            return BoundResult("infinite-inf", None, None, limit, tuple(trace))
        aut = _pruned(instantiate(phi, n))
        product = synchronized_product(aut, model)
        if limit is None:
            if frag == LTL:
                # phi[n] does not depend on n; one check decides.
                limit = 1
            else:
                # Pumping keeps some finite value below this product size,
                # so a scan this long with no hit leaves only infinity.
                sizing = _pruned(negate_dual(phi))
                limit = max(
                    1,
                    sizing.num_states
                    * model.num_states
                    * (1 + product.num_acc_sets),
                )
        hit = find_accepting_lasso(product)
        if hit is None:
            trace.append(
                IterationStats(
                    "search", n, None, aut.num_states, product.num_states,
                    len(product.transitions), None,
                )
            )
            n += 1
            continue
        word = hit[1]
        trace.append(
            IterationStats(
                "search", n, n, aut.num_states, product.num_states,
                len(product.transitions), word,
            )
        )
        return BoundResult("finite", n, word, limit, tuple(trace))
