"""The five-token worked example on the ladder family.

Token placement is recovered from the computed labeling: for each required
value the vertex with the smallest reachable set is taken (ties broken by
name), which keeps exhaustive self-play from the position small.
"""

from __future__ import annotations

from importlib import resources

from .gamma_engine import Labeling, compute_gamma
from .graph_core import GameGraph, fig2_family, reachable_subgraph
from .nim_algebra import GammaValue, Inf
from .strategy import Position, make_position

SAMPLE_IMAX = 9
SAMPLE_VALUES: tuple[GammaValue, ...] = (1, 3, 2, 4, Inf(range(5)))


def sample_problem_path():
    return resources.files("cyclic_sg") / "data" / "sample_problem.game"


def find_tokens(g: GameGraph, labeling: Labeling, values=SAMPLE_VALUES) -> Position:
    reach = {}

    def size(v: str) -> int:
        if v not in reach:
            reach[v] = len(reachable_subgraph(g, [v]))
        return reach[v]

    tokens = []
    for x in values:
        cands = [v for v in g.vertices if labeling.gamma[v] == x]
        if not cands:
            raise LookupError(f"no vertex with value {x}")
        tokens.append(min(cands, key=lambda v: (size(v), v)))
    return make_position(tokens)


def sample_problem_text(i_max: int = SAMPLE_IMAX) -> str:
    g = fig2_family(i_max)
    tokens = find_tokens(g, compute_gamma(g))
    return (
        "# Five tokens on the ladder family, placed on vertices with values 1, 3, 2, 4\n"
        "# and inf(0,1,2,3,4). Regenerate with: python -m cyclic_sg.sample\n"
        f"fig2 {i_max}\n"
        f"tokens {' '.join(tokens)}\n"
    )


if __name__ == "__main__":
    print(sample_problem_text(), end="")
