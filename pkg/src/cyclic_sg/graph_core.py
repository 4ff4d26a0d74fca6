"""Game graphs: construction, the standard graph families, reachability and path lengths.

Vertices are strings; every ordering (vertex iteration, follower lists) is
lexicographic so that all downstream results are reproducible.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

VERTEX_ID = re.compile(r"[A-Za-z0-9_.:-]+")


class GraphError(ValueError):
    """Malformed graph description."""


class BudgetExceeded(RuntimeError):
    """A search or materialization needed more work than it was allowed."""


@dataclass(frozen=True)
class GameGraph:
    vertices: tuple[str, ...]
    followers: Mapping[str, tuple[str, ...]] = field(repr=False)

    def __contains__(self, v: object) -> bool:
        return v in self.followers

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> list[tuple[str, str]]:
        return [(u, v) for u in self.vertices for v in self.followers[u]]

    def leaves(self) -> list[str]:
        return [u for u in self.vertices if not self.followers[u]]

    def is_acyclic(self) -> bool:
        return topological_order(self) is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameGraph):
            return NotImplemented
        return self.vertices == other.vertices and dict(self.followers) == dict(other.followers)

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.edges())))


def build_graph(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> GameGraph:
    """Build a canonical graph: vertices sorted, follower lists sorted and deduplicated."""
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str) or not VERTEX_ID.fullmatch(v):
            raise GraphError(f"invalid vertex id {v!r}")
        if v in seen:
            raise GraphError(f"duplicate vertex {v!r}")
        seen.add(v)
    succ: dict[str, set[str]] = {v: set() for v in seen}
    for a, b in edges:
        for end in (a, b):
            if end not in seen:
                raise GraphError(f"undeclared vertex {end!r} in edge ({a}, {b})")
        succ[a].add(b)
    order = tuple(sorted(seen))
    return GameGraph(order, {v: tuple(sorted(succ[v])) for v in order})


def union(*graphs: GameGraph) -> GameGraph:
    """Disjoint union; shared vertex names are an error."""
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for g in graphs:
        vertices.extend(g.vertices)
        edges.extend(g.edges())
    return build_graph(vertices, edges)


def _heap_parts(prefix: str, r: int) -> tuple[list[str], list[tuple[str, str]]]:
    names = [f"{prefix}:{j}" for j in range(r + 1)]
    edges = [(names[j], names[i]) for j in range(r + 1) for i in range(j)]
    return names, edges


def nim_heap(prefix: str, r: int) -> GameGraph:
    """Nim-heap of size ``r``: vertices ``prefix:0..prefix:r``, an edge j -> i for all i < j."""
    if r < 0:
        raise GraphError("heap size must be nonnegative")
    return build_graph(*_heap_parts(prefix, r))


def fig2_heap_sizes(i: int) -> tuple[int, int]:
    """Sizes of the downward heap G_i and the upward heap H attached at column ``i``."""
    return (4 * i + 8) // 3, (i + 2) // 3


def fig2_names(i: int) -> dict[str, str]:
    """Names of the distinguished vertices in column ``i`` of the ladder family."""
    down, up = fig2_heap_sizes(i)
    return {
        "u": f"u:{i}",
        "g_top": f"G{i}:{down}",
        "h_top": f"H{i}:{up}",
        # depth d below the top of G_i is G{i}:{down - d}
        "loop_src": f"G{i}:{down - i}",
        "back_src": f"G{i}:{down - i - 1}",
    }


def fig2_family(i_max: int) -> GameGraph:
    """The locally path-bounded ladder truncated at column ``i_max``.

    Column i has a horizontal vertex ``u:i`` pointing left to ``u:{i-1}``, a
    downward heap ``G{i}`` of size floor((4i+8)/3) entered from ``u:i`` at its
    top, and an upward heap ``H{i}`` of size floor((i+2)/3) also entered from
    ``u:i``. Inside G_i the depth-i vertex points back to the top (a cycle of
    length i+1) and the depth-(i+1) vertex points back to ``u:i`` (a cycle of
    length i+3 through the entry edge).
    """
    if i_max < 0:
        raise GraphError("i_max must be nonnegative")
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for i in range(i_max + 1):
        down, up = fig2_heap_sizes(i)
        assert down >= i + 1, "heap G_i too small for its back edges"
        names = fig2_names(i)
        gv, ge = _heap_parts(f"G{i}", down)
        hv, he = _heap_parts(f"H{i}", up)
        vertices += [names["u"], *gv, *hv]
        edges += ge + he
        edges += [(names["u"], names["g_top"]), (names["u"], names["h_top"])]
        if i >= 1:
            edges.append((names["u"], f"u:{i - 1}"))
        edges.append((names["loop_src"], names["g_top"]))
        edges.append((names["back_src"], names["u"]))
    return build_graph(vertices, edges)


def unbounded_fan(n: int, root: str = "u") -> GameGraph:
    """Vertex ``root`` whose followers are the tops of Nim-heaps of sizes 0..n.

    Heap i is named ``{root}{i}`` so its top is ``{root}{i}:{i}``.
    """
    if n < 0:
        raise GraphError("n must be nonnegative")
    vertices = [root]
    edges: list[tuple[str, str]] = []
    for i in range(n + 1):
        hv, he = _heap_parts(f"{root}{i}", i)
        vertices += hv
        edges += he
        edges.append((root, hv[-1]))
    return build_graph(vertices, edges)


def reachable_subgraph(g: GameGraph, roots: Iterable[str], budget: int = 10**6) -> GameGraph:
    """Induced subgraph on everything reachable from ``roots``.

    Raises BudgetExceeded once more than ``budget`` vertices would be needed.
    """
    seen: set[str] = set()
    queue = deque()
    for r in sorted(set(roots)):
        if r not in g:
            raise GraphError(f"unknown vertex {r!r}")
        seen.add(r)
        queue.append(r)
    if len(seen) > budget:
        raise BudgetExceeded(f"more than {budget} vertices reachable")
    while queue:
        u = queue.popleft()
        for v in g.followers[u]:
            if v not in seen:
                seen.add(v)
                if len(seen) > budget:
                    raise BudgetExceeded(f"more than {budget} vertices reachable")
                queue.append(v)
    order = tuple(v for v in g.vertices if v in seen)
    return GameGraph(order, {v: g.followers[v] for v in order})


def topological_order(g: GameGraph) -> list[str] | None:
    """Vertices ordered leaves-first, or None when the graph has a cycle."""
    out_deg = {u: len(g.followers[u]) for u in g.vertices}
    preds: dict[str, list[str]] = {u: [] for u in g.vertices}
    for u, v in g.edges():
        preds[v].append(u)
    ready = deque(u for u in g.vertices if out_deg[u] == 0)
    order = []
    while ready:
        v = ready.popleft()
        order.append(v)
        for u in preds[v]:
            out_deg[u] -= 1
            if out_deg[u] == 0:
                ready.append(u)
    return order if len(order) == len(g.vertices) else None


def strongly_connected_components(g: GameGraph) -> list[list[str]]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.followers[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.followers[w])))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))
    return comps


class _LongestPaths:
    """Longest simple paths, one strongly connected component at a time.

    A simple path crosses components in topological order and never returns,
    so the longest path from v is a simple path inside v's component followed
    by one edge out and the longest path from there. Only the in-component
    part is searched exhaustively.
    """

    def __init__(self, g: GameGraph, max_expansions: int):
        self.g = g
        self.budget = max_expansions
        self.expansions = 0
        self.comp_of: dict[str, int] = {}
        self.comps = strongly_connected_components(g)
        for k, comp in enumerate(self.comps):
            for v in comp:
                self.comp_of[v] = k
        self.memo: dict[str, int] = {}
        # components are produced sinks-first, so every exit target is ready
        for comp in self.comps:
            self._solve(comp)

    def _solve(self, comp: list[str]) -> None:
        g, k = self.g, self.comp_of[comp[0]]
        local = {v: i for i, v in enumerate(comp)}
        inner = [[local[w] for w in g.followers[v] if self.comp_of[w] == k] for v in comp]
        exit_len = [
            max((1 + self.memo[w] for w in g.followers[v] if self.comp_of[w] != k), default=0)
            for v in comp
        ]
        best_exit = max(exit_len)
        size = len(comp)
        for s, v in enumerate(comp):
            best = exit_len[s]
            stack = [[s, 1 << s, 0, 0]]
            while stack:
                frame = stack[-1]
                x, mask, depth, slot = frame
                if slot == 0:
                    best = max(best, depth + exit_len[x])
                nxt = inner[x]
                # optimistic bound: visit every remaining vertex, then leave by the best exit
                if depth + (size - 1 - depth) + best_exit <= best and slot == 0:
                    stack.pop()
                    continue
                while slot < len(nxt) and (mask >> nxt[slot]) & 1:
                    slot += 1
                if slot == len(nxt):
                    stack.pop()
                    continue
                frame[3] = slot + 1
                self.expansions += 1
                if self.expansions > self.budget:
                    raise BudgetExceeded(f"longest-path search exceeded {self.budget} expansions")
                y = nxt[slot]
                stack.append([y, mask | (1 << y), depth + 1, 0])
            self.memo[v] = best


def longest_path(g: GameGraph, u: str, max_expansions: int = 5_000_000) -> int:
    """Edge count of a longest simple path starting at ``u``.

    Exhaustive within each strongly connected component, so exponential only
    in the size of the largest cycle-bearing component. Raises BudgetExceeded
    after ``max_expansions`` search steps.
    """
    if u not in g:
        raise GraphError(f"unknown vertex {u!r}")
    return _LongestPaths(reachable_subgraph(g, [u]), max_expansions).memo[u]


@dataclass(frozen=True)
class PathBoundReport:
    per_vertex: dict[str, int]
    bound: int


def path_bounds(g: GameGraph, max_expansions: int = 5_000_000) -> PathBoundReport:
    """Longest simple path length from every vertex, plus their maximum."""
    per = dict(_LongestPaths(g, max_expansions).memo)
    return PathBoundReport({v: per[v] for v in g.vertices}, max(per.values(), default=0))
