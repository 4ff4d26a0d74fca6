"""Brute-force ground truth for the token game and for acyclic Grundy values.

Nothing here looks at gamma values: ``oracle_classify`` runs a retrograde
win/lose/draw analysis on the explicit state space of token placements, and
``classic_sg`` is the textbook memoized mex recursion.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph_core import BudgetExceeded, GameGraph, GraphError, build_graph
from .nim_algebra import mex
from .strategy import Outcome, Position, make_position


class CycleError(GraphError):
    pass


@dataclass(frozen=True)
class StateGraph:
    states: tuple[Position, ...]
    transitions: dict[Position, tuple[Position, ...]]


def state_graph(g: GameGraph, start: Iterable[str], budget: int = 10**6) -> StateGraph:
    """All positions reachable from ``start`` by moving one token along one edge."""
    root = make_position(start)
    for v in root:
        if v not in g:
            raise GraphError(f"token on unknown vertex {v!r}")
    trans: dict[Position, tuple[Position, ...]] = {}
    queue = deque([root])
    seen = {root}
    while queue:
        p = queue.popleft()
        succ = set()
        for i, src in enumerate(p):
            if i and p[i - 1] == src:
                continue
            rest = p[:i] + p[i + 1:]
            for dst in g.followers[src]:
                succ.add(make_position(rest + (dst,)))
        trans[p] = tuple(sorted(succ))
        for q in trans[p]:
            if q not in seen:
                seen.add(q)
                if len(seen) > budget:
                    raise BudgetExceeded(f"state space exceeds {budget} positions")
                queue.append(q)
    return StateGraph(tuple(sorted(trans)), trans)


def solve_states(sg: StateGraph, order: Sequence[Position] | None = None) -> dict[Position, Outcome]:
    """Retrograde P/N/D labeling by reverse propagation with successor counters.

    Stuck states are P; a state with a P successor is N; a state whose
    successors are all N is P; whatever never gets labeled is D. ``order``
    only changes the seeding order of the work queue.
    """
    preds: dict[Position, list[Position]] = {p: [] for p in sg.states}
    for p, succ in sg.transitions.items():
        for q in succ:
            preds[q].append(p)
    remaining = {p: len(sg.transitions[p]) for p in sg.states}
    label: dict[Position, Outcome] = {}
    seeds = sg.states if order is None else order
    queue = deque(p for p in seeds if remaining[p] == 0)
    for p in queue:
        label[p] = Outcome.P
    while queue:
        q = queue.popleft()
        for p in preds[q]:
            if p in label:
                continue
            if label[q] is Outcome.P:
                label[p] = Outcome.N
                queue.append(p)
            else:
                remaining[p] -= 1
                if remaining[p] == 0:
                    label[p] = Outcome.P
                    queue.append(p)
    for p in sg.states:
        label.setdefault(p, Outcome.D)
    return label


def oracle_classify(g: GameGraph, start: Iterable[str], budget: int = 10**6) -> dict[Position, Outcome]:
    """Outcome of every position reachable from ``start``."""
    return solve_states(state_graph(g, start, budget))


def classic_sg(g: GameGraph) -> dict[str, int]:
    """Sprague-Grundy values of an acyclic graph by memoized mex recursion."""
    values: dict[str, int] = {}
    state: dict[str, int] = {}  # 1 = on stack, 2 = done

    for root in g.vertices:
        if root in values:
            continue
        stack = [(root, iter(g.followers[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                st = state.get(w)
                if st == 1:
                    raise CycleError(f"cycle through {w!r}")
                if st is None:
                    state[w] = 1
                    stack.append((w, iter(g.followers[w])))
                    break
            else:
                stack.pop()
                values[v] = mex(values[w] for w in g.followers[v])
                state[v] = 2
    return values


def random_graph(
    seed: int,
    n_vertices: int,
    edge_density: float,
    leaf_fraction: float = 0.0,
    acyclic: bool = False,
) -> GameGraph:
    """Reproducible random digraph on vertices ``v00, v01, ...``.

    ``round(leaf_fraction * n)`` vertices are forced to be leaves; every other
    ordered pair (self-loops included) becomes an edge with probability
    ``edge_density``. With ``acyclic=True`` only edges from a higher to a lower
    index are drawn.
    """
    if n_vertices < 1:
        raise ValueError("n_vertices must be positive")
    if not 0.0 <= edge_density <= 1.0 or not 0.0 <= leaf_fraction <= 1.0:
        raise ValueError("edge_density and leaf_fraction must lie in [0, 1]")
    rng = random.Random(seed)
    width = max(2, len(str(n_vertices - 1)))
    names = [f"v{k:0{width}d}" for k in range(n_vertices)]
    leaves = set(rng.sample(range(n_vertices), round(leaf_fraction * n_vertices)))
    edges = []
    for a in range(n_vertices):
        for b in range(n_vertices):
            draw = rng.random()
            if a in leaves or (acyclic and b >= a):
                continue
            if draw < edge_density:
                edges.append((names[a], names[b]))
    return build_graph(names, edges)
