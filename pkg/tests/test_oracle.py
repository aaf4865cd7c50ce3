import random

import pytest
from hypothesis import given, settings, strategies as st

from cltlbound.formula import FragmentError, negate_dual, parse_formula
from cltlbound.oracle import eval_ltl_on_lasso, value_inf, value_sup
from cltlbound.words import ABOVE_CAP, LassoWord, parse_lasso

from corpus import brute_eval, random_formula, random_lasso


def test_eval_simple():
    w = parse_lasso("{a} | {b}")
    assert eval_ltl_on_lasso(parse_formula("a"), w)
    assert not eval_ltl_on_lasso(parse_formula("b"), w)
    assert eval_ltl_on_lasso(parse_formula("X b"), w)
    assert eval_ltl_on_lasso(parse_formula("F b"), w)
    assert not eval_ltl_on_lasso(parse_formula("G a"), w)
    assert eval_ltl_on_lasso(parse_formula("X (G b)"), w)
    assert eval_ltl_on_lasso(parse_formula("a U b"), w)


def test_eval_rejects_cost_operators():
    with pytest.raises(FragmentError):
        eval_ltl_on_lasso(parse_formula("F<= a"), parse_lasso("| {a}"))


def test_eval_release_on_cycle_boundary():
    # release needs the greatest fixpoint; a pure prefix sweep gets it wrong
    w = parse_lasso("{a} | {a} {}")
    assert eval_ltl_on_lasso(parse_formula("b R a"), w) is False
    assert eval_ltl_on_lasso(parse_formula("b R a"), parse_lasso("| {a}")) is True


def test_eval_agrees_with_brute_force():
    rng = random.Random(23)
    for _ in range(400):
        phi = random_formula(rng, 4, ("a", "b"), "LTL")
        w = random_lasso(rng, ("a", "b"))
        assert eval_ltl_on_lasso(phi, w) == brute_eval(phi, w), (str(phi), str(w))


@settings(max_examples=200)
@given(st.data())
def test_eval_agrees_with_brute_force_hypothesis(data):
    rng = random.Random(data.draw(st.integers(0, 2**32)))
    phi = random_formula(rng, 3, ("a", "b"), "LTL")
    w = random_lasso(rng, ("a", "b"), 4, 4)
    assert eval_ltl_on_lasso(phi, w) == brute_eval(phi, w)


def test_value_inf_counts_steps():
    phi = parse_formula("F<= !a")
    assert value_inf(phi, parse_lasso("{a} {a} {a} | {}"), 10) == 3
    assert value_inf(phi, parse_lasso("| {}"), 10) == 0
    assert value_inf(phi, parse_lasso("| {a}"), 10) is ABOVE_CAP


def test_value_inf_max_gap():
    phi = parse_formula("G (F<= !a)")
    assert value_inf(phi, parse_lasso("| {a} {a} {}"), 10) == 2
    assert value_inf(phi, parse_lasso("{a} {a} {a} | {}"), 10) == 3
    assert value_inf(phi, parse_lasso("| {}"), 10) == 0


def test_value_inf_until_counts_left_failures():
    phi = parse_formula("a U<= b")
    # failures of a before the first b are what cost
    assert value_inf(phi, parse_lasso("{a} {} {a} | {b}"), 10) == 1
    assert value_inf(phi, parse_lasso("{} {} | {b}"), 10) == 2
    assert value_inf(phi, parse_lasso("{a} | {a,b}"), 10) == 0


def test_value_sup_block_lengths():
    phi = parse_formula("G> a")
    assert value_sup(phi, parse_lasso("{a} {a} {a} | {}"), 10) == 2
    assert value_sup(phi, parse_lasso("| {}"), 10) == 0
    assert value_sup(phi, parse_lasso("| {a}"), 10) is ABOVE_CAP
    best = parse_formula("F (G> a)")
    assert value_sup(best, parse_lasso("| {a} {a} {a} {}"), 10) == 2


def test_caps_must_be_positive():
    with pytest.raises(ValueError):
        value_inf(parse_formula("F<= a"), parse_lasso("| {a}"), 0)
    with pytest.raises(ValueError):
        value_sup(parse_formula("G> a"), parse_lasso("| {a}"), 0)


def test_fragment_guards():
    w = parse_lasso("| {a}")
    with pytest.raises(FragmentError):
        value_inf(parse_formula("G> a"), w, 5)
    with pytest.raises(FragmentError):
        value_sup(parse_formula("F<= a"), w, 5)


def test_duality_seeded_corpus():
    rng = random.Random(91)
    cap = 8
    compared = 0
    for _ in range(500):
        phi = random_formula(rng, 3, ("a", "b"), "CostLE")
        w = random_lasso(rng, ("a", "b"), 4, 4)
        inf_v = value_inf(phi, w, cap)
        sup_v = value_sup(negate_dual(phi), w, cap)
        if inf_v is ABOVE_CAP or sup_v is ABOVE_CAP:
            continue
        assert sup_v == max(0, inf_v - 1), (str(phi), str(w))
        compared += 1
    assert compared > 300


def test_value_inf_monotone_in_word_sat():
    # a sanity pin: the value is the least n whose unfolding holds
    from cltlbound.formula import instantiate

    rng = random.Random(5)
    for _ in range(200):
        phi = random_formula(rng, 3, ("a", "b"), "CostLE")
        w = random_lasso(rng, ("a", "b"), 4, 4)
        v = value_inf(phi, w, 5)
        for n in range(6):
            holds = eval_ltl_on_lasso(instantiate(phi, n), w)
            if v is ABOVE_CAP:
                assert not holds
            else:
                assert holds == (n >= v)
