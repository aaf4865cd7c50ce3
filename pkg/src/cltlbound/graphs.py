"""Strongly connected component helpers shared by the automaton passes."""

from __future__ import annotations

from typing import Iterable, Sequence


def tarjan_sccs(num_nodes: int, succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Iterative Tarjan; components come out in reverse topological order."""
    index = [-1] * num_nodes
    low = [0] * num_nodes
    on_stack = [False] * num_nodes
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(num_nodes):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, child = work[-1]
            if child == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            edges = succ[v]
            while child < len(edges):
                w = edges[child]
                child += 1
                if index[w] == -1:
                    work[-1] = (v, child)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    return comps


def accepting_components(
    num_nodes: int,
    edges: Iterable[tuple[int, int, Iterable[int]]],
    num_acc_sets: int,
) -> tuple[list[int], set[int]]:
    """Partition into SCCs and pick out the accepting ones.

    edges are (src, dst, acceptance-set-indices) triples.  A component is
    accepting when it holds at least one internal edge and, for every
    acceptance set, an internal edge belonging to it; with zero acceptance
    sets any internal edge qualifies (every infinite run accepts).
    Returns (component id per node, ids of accepting components).
    """
    edges = list(edges)
    succ: list[list[int]] = [[] for _ in range(num_nodes)]
    for src, dst, _ in edges:
        succ[src].append(dst)
    comps = tarjan_sccs(num_nodes, succ)
    comp_of = [0] * num_nodes
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid

    full = (1 << num_acc_sets) - 1
    internal = [False] * len(comps)
    cover = [0] * len(comps)
    for src, dst, acc in edges:
        cid = comp_of[src]
        if comp_of[dst] != cid:
            continue
        internal[cid] = True
        for a in acc:
            cover[cid] |= 1 << a
    accepting = {cid for cid in range(len(comps)) if internal[cid] and cover[cid] == full}
    return comp_of, accepting
