"""The generalized Sprague-Grundy function with its counter function.

``compute_gamma`` labels vertices finitely in passes; a vertex is labeled
only once its value can never be contradicted by a later label. Whatever is
left when a pass makes no progress is infinite. ``validate_labeling`` checks
any labeling against the three defining conditions independently of how it
was produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .graph_core import GameGraph, reachable_subgraph
from .nim_algebra import GammaValue, Inf, is_finite, mex


@dataclass(frozen=True)
class Labeling:
    gamma: Mapping[str, GammaValue]
    counter: Mapping[str, int]

    def finite(self, v: str) -> bool:
        return is_finite(self.gamma[v])

    def render(self) -> str:
        """One ``<id> <gamma> <counter|->`` line per vertex, sorted by id."""
        lines = []
        for v in sorted(self.gamma):
            c = self.counter.get(v)
            lines.append(f"{v} {self.gamma[v]} {'-' if c is None else c}")
        return "\n".join(lines)


def gamma_prime(g: GameGraph, gamma: Mapping[str, GammaValue], u: str) -> int:
    """mex of the finite values currently assigned to the followers of ``u``.

    ``gamma`` may be partial; unlabeled and infinite followers are ignored.
    """
    return mex(x for v in g.followers[u] if is_finite(x := gamma.get(v, Inf())))


def compute_gamma(
    g: GameGraph,
    order: Sequence[str] | None = None,
    on_label: Callable[[str, int, int], None] | None = None,
) -> Labeling:
    """Compute gamma and a counter function on a finite graph.

    Vertices are scanned in ``order`` (lexicographic by default). ``u`` gets
    the finite label m = gamma'(u) when every follower still unlabeled has a
    follower already labeled m; its counter is the global labeling timestamp.
    ``on_label(u, value, counter)`` is called at each assignment.
    """
    scan = list(g.vertices if order is None else order)
    if sorted(scan) != list(g.vertices):
        raise ValueError("order must be a permutation of the graph's vertices")
    gamma: dict[str, int] = {}
    counter: dict[str, int] = {}
    # values present among the labeled followers of each vertex
    seen_values: dict[str, set[int]] = {v: set() for v in g.vertices}
    preds: dict[str, list[str]] = {v: [] for v in g.vertices}
    for a, b in g.edges():
        preds[b].append(a)

    t = 0
    pending = scan
    while True:
        progressed = False
        rest = []
        for u in pending:
            m = mex(seen_values[u])
            if all(v in gamma or m in seen_values[v] for v in g.followers[u]):
                gamma[u] = m
                counter[u] = t
                if on_label is not None:
                    on_label(u, m, t)
                t += 1
                progressed = True
                for p in preds[u]:
                    seen_values[p].add(m)
            else:
                rest.append(u)
        pending = rest
        if not progressed or not pending:
            break

    full: dict[str, GammaValue] = dict(gamma)
    for u in pending:
        full[u] = Inf(gamma[v] for v in g.followers[u] if v in gamma)
    return Labeling({v: full[v] for v in g.vertices}, counter)


def _greater(a: GammaValue, b: int) -> bool:
    """``a > b`` for finite ``b``, treating every infinite value as larger."""
    return True if isinstance(a, Inf) else a > b


@dataclass
class ValidationReport:
    condition_A_violations: list[tuple[str, str]] = field(default_factory=list)
    condition_B_violations: list[tuple[str, str]] = field(default_factory=list)
    condition_C_violations: list[tuple[str, str]] = field(default_factory=list)
    structural: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.condition_A_violations
            or self.condition_B_violations
            or self.condition_C_violations
            or self.structural
        )

    def summary(self) -> str:
        rows = [
            ("A", self.condition_A_violations),
            ("B", self.condition_B_violations),
            ("C", self.condition_C_violations),
            ("structure", self.structural),
        ]
        out = []
        for name, errs in rows:
            out.append(f"{name} {'ok' if not errs else 'FAIL'}")
            out.extend(f"  {v}: {msg}" for v, msg in errs)
        return "\n".join(out)


def validate_labeling(g: GameGraph, labeling: Labeling) -> ValidationReport:
    """Check a labeling against conditions A, B and C; collect every violation."""
    rep = ValidationReport()
    gamma, counter = labeling.gamma, labeling.counter

    missing = [v for v in g.vertices if v not in gamma]
    for v in missing:
        rep.structural.append((v, "no gamma value"))
    if missing:
        return rep
    for v in g.vertices:
        x = gamma[v]
        if is_finite(x) and v not in counter:
            rep.structural.append((v, "finite value without a counter"))
        if not is_finite(x) and v in counter:
            rep.structural.append((v, "infinite value with a counter"))
        if isinstance(x, Inf):
            K = Inf(gamma[w] for w in g.followers[v] if is_finite(gamma[w]))
            if K != x:
                rep.structural.append((v, f"labeled {x} but finite follower values give {K}"))
    if rep.structural:
        return rep

    for u in g.vertices:
        x = gamma[u]
        gp = gamma_prime(g, gamma, u)
        if is_finite(x):
            if x != gp:
                rep.condition_A_violations.append((u, f"gamma={x} but mex of followers is {gp}"))
            for v in g.followers[u]:
                if not _greater(gamma[v], x):
                    continue
                if not any(gamma[w] == x and counter[w] < counter[u] for w in g.followers[v]):
                    rep.condition_B_violations.append(
                        (u, f"follower {v} (gamma={gamma[v]}) has no reply to {x} with counter < {counter[u]}")
                    )
        else:
            if not any(isinstance(gamma[v], Inf) and gp not in gamma[v] for v in g.followers[u]):
                rep.condition_C_violations.append(
                    (u, f"no infinite follower whose K omits gamma'={gp}")
                )
    return rep


def gamma_of_family(
    g: GameGraph, roots: Iterable[str], budget: int = 10**6
) -> tuple[GameGraph, Labeling]:
    """Materialize what is reachable from ``roots`` and label it."""
    sub = reachable_subgraph(g, roots, budget)
    return sub, compute_gamma(sub)
