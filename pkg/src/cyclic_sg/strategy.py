"""Token games on a labeled graph: P/N/D classification, move choice and self-play.

A position is a multiset of vertices, stored as a sorted tuple. The outcome
of a position follows from the generalized Nim-sum of its tokens' values:
0 is a P-position, inf(K) with 0 not in K is a draw, everything else is N.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .gamma_engine import Labeling
from .graph_core import BudgetExceeded, GameGraph
from .nim_algebra import GammaValue, Inf, is_finite, sigma


class Outcome(str, enum.Enum):
    P = "P"
    N = "N"
    D = "D"


class MoveKind(str, enum.Enum):
    WINNING = "Winning"
    NONLOSING = "NonLosing"
    LOSING = "Losing"


class StrategyError(ValueError):
    pass


Position = tuple[str, ...]


def make_position(tokens: Iterable[str]) -> Position:
    return tuple(sorted(tokens))


@dataclass(frozen=True)
class Move:
    src: str
    dst: str
    kind: MoveKind | None = None

    def apply(self, p: Position) -> Position:
        tokens = list(p)
        try:
            tokens.remove(self.src)
        except ValueError:
            raise StrategyError(f"no token on {self.src}") from None
        tokens.append(self.dst)
        return make_position(tokens)

    def __str__(self) -> str:
        return f"{self.src}->{self.dst}"


def legal_moves(g: GameGraph, p: Position) -> Iterator[Move]:
    """Every move of one token along one edge, in lexicographic (src, dst) order."""
    for src in sorted(set(p)):
        for dst in g.followers[src]:
            yield Move(src, dst)


def position_sigma(labeling: Labeling, p: Position) -> GammaValue:
    try:
        return sigma(labeling.gamma[v] for v in p)
    except KeyError as exc:
        raise StrategyError(f"token on unknown vertex {exc.args[0]!r}") from None


def outcome_of(s: GammaValue) -> Outcome:
    if isinstance(s, Inf):
        return Outcome.N if 0 in s else Outcome.D
    return Outcome.P if s == 0 else Outcome.N


def classify(g: GameGraph, labeling: Labeling, p: Position) -> Outcome:
    for v in p:
        if v not in g:
            raise StrategyError(f"token on unknown vertex {v!r}")
    return outcome_of(position_sigma(labeling, p))


def best_move(
    g: GameGraph, labeling: Labeling, p: Position, use_counter: bool = True
) -> Move | None:
    """Pick a move: to a P-position if possible, else to a D-position, else any.

    Winning moves that lower the moved token's value come first; a winning
    move that raises it can be undone by the opponent forever. Then the
    destination with the least counter, then lexicographic (src, dst). With
    ``use_counter=False`` the counter step is skipped. Returns None when no
    token can move.
    """
    winning: list[tuple[bool, int, str, str]] = []
    first_draw = first_any = None
    for m in legal_moves(g, p):
        if first_any is None:
            first_any = m
        out = outcome_of(position_sigma(labeling, m.apply(p)))
        if out is Outcome.P:
            c = labeling.counter[m.dst] if use_counter else 0
            winning.append((is_escalation(labeling, m), c, m.src, m.dst))
        elif out is Outcome.D and first_draw is None:
            first_draw = m
    if winning:
        *_, src, dst = min(winning)
        return Move(src, dst, MoveKind.WINNING)
    if first_draw is not None:
        return Move(first_draw.src, first_draw.dst, MoveKind.NONLOSING)
    if first_any is not None:
        return Move(first_any.src, first_any.dst, MoveKind.LOSING)
    return None


def is_escalation(labeling: Labeling, move: Move) -> bool:
    """True when ``move`` takes a token from a finite value to a larger (or infinite) one."""
    a, b = labeling.gamma[move.src], labeling.gamma[move.dst]
    return is_finite(a) and (isinstance(b, Inf) or b > a)


def respond_to_escalation(
    g: GameGraph, labeling: Labeling, previous: Position, opponent_move: Move
) -> Move:
    """Undo an escalation: move the same token back down to the old value.

    The opponent moved a token from u to v with gamma(v) > gamma(u). The reply
    moves it from v to the follower w with gamma(w) = gamma(u) of least counter,
    which is strictly below the counter of u.
    """
    u, v = opponent_move.src, opponent_move.dst
    if u not in previous:
        raise StrategyError(f"no token on {u} in the previous position")
    if v not in g.followers[u]:
        raise StrategyError(f"{v} is not a follower of {u}")
    if not is_escalation(labeling, opponent_move):
        raise StrategyError(f"move {opponent_move} does not raise a finite value")
    target = labeling.gamma[u]
    cands = [w for w in g.followers[v] if labeling.gamma[w] == target]
    if not cands:
        raise StrategyError(f"no follower of {v} has value {target}; labeling violates B")
    w = min(cands, key=lambda w: (labeling.counter[w], w))
    after = opponent_move.apply(previous)
    kind = outcome_of(position_sigma(labeling, Move(v, w).apply(after)))
    return Move(v, w, {Outcome.P: MoveKind.WINNING, Outcome.D: MoveKind.NONLOSING}.get(kind, MoveKind.LOSING))


class Result(str, enum.Enum):
    ENGINE_WIN = "EngineWin"
    ENGINE_LOSS = "EngineLoss"
    DRAW_CUTOFF = "DrawCutoff"



@dataclass(frozen=True)
class Ply:
    side: str
    move: Move
    sigma_before: GammaValue
    sigma_after: GammaValue

    def __str__(self) -> str:
        return f"{self.side} {self.move} sigma={self.sigma_after}"


@dataclass
class SimulationResult:
    result: Result
    transcript: list[Ply]
    escalations: list[tuple[str, int, int]] = field(default_factory=list)
    states: int = 0

    @property
    def plies(self) -> int:
        return len(self.transcript)

    def render(self) -> str:
        rows = [str(p) for p in self.transcript]
        rows.append(f"result {self.result.value} plies={self.plies}")
        return "\n".join(rows)


def engine_reply(
    g: GameGraph,
    labeling: Labeling,
    p: Position,
    previous: Position | None = None,
    opponent_move: Move | None = None,
    use_counter: bool = True,
) -> Move | None:
    """The engine's move in ``p``, given the opponent's last move if any.

    If the opponent just escalated a token out of a P-position, the token is
    brought back with :func:`respond_to_escalation`; otherwise :func:`best_move`.
    """
    if (
        use_counter
        and opponent_move is not None
        and previous is not None
        and classify(g, labeling, previous) is Outcome.P
        and is_escalation(labeling, opponent_move)
    ):
        return respond_to_escalation(g, labeling, previous, opponent_move)
    return best_move(g, labeling, p, use_counter)


def simulate(
    g: GameGraph,
    labeling: Labeling,
    start: Iterable[str],
    engine_side: str = "first",
    adversary: str = "seeded-random",
    seed: int = 0,
    max_plies: int = 1000,
    use_counter: bool = True,
    max_states: int = 2_000_000,
) -> SimulationResult:
    """Play the engine against an adversary from ``start``.

    ``adversary`` is ``"seeded-random"`` (one line, moves drawn from
    ``random.Random(seed)``) or ``"exhaustive"`` (every adversary line; the
    reported result and transcript belong to the worst line for the engine,
    preferring the longest among equals).
    """
    if engine_side not in ("first", "second"):
        raise ValueError("engine_side must be 'first' or 'second'")
    start_pos = make_position(start)
    for v in start_pos:
        if v not in g:
            raise StrategyError(f"token on unknown vertex {v!r}")
    engine_first = engine_side == "first"
    if adversary == "seeded-random":
        return _simulate_random(g, labeling, start_pos, engine_first, random.Random(seed), max_plies, use_counter)
    if adversary == "exhaustive":
        return _simulate_exhaustive(g, labeling, start_pos, engine_first, max_plies, use_counter, max_states)
    raise ValueError(f"unknown adversary {adversary!r}")


def _simulate_random(g, labeling, pos, engine_first, rng, max_plies, use_counter):
    transcript: list[Ply] = []
    escalations: list[tuple[str, int, int]] = []
    engine_to_move = engine_first
    previous = last = None
    while len(transcript) < max_plies:
        s_before = position_sigma(labeling, pos)
        if engine_to_move:
            mv = engine_reply(g, labeling, pos, previous, last, use_counter)
            if mv is None:
                return SimulationResult(Result.ENGINE_LOSS, transcript, escalations)
            if last is not None and previous is not None and _fired(g, labeling, previous, last, use_counter):
                escalations.append((mv.dst, labeling.counter[last.src], labeling.counter[mv.dst]))
            side = "engine"
        else:
            moves = list(legal_moves(g, pos))
            if not moves:
                return SimulationResult(Result.ENGINE_WIN, transcript, escalations)
            mv = rng.choice(moves)
            side = "adversary"
        previous, pos = pos, mv.apply(pos)
        last = mv
        transcript.append(Ply(side, mv, s_before, position_sigma(labeling, pos)))
        engine_to_move = not engine_to_move
    return SimulationResult(Result.DRAW_CUTOFF, transcript, escalations)


def _fired(g, labeling, previous, last, use_counter) -> bool:
    return (
        use_counter
        and classify(g, labeling, previous) is Outcome.P
        and is_escalation(labeling, last)
    )


def _simulate_exhaustive(g, labeling, start, engine_first, max_plies, use_counter, max_states):
    """Worst case over all adversary lines against the deterministic engine.

    The engine's move depends only on (position, previous position, last
    move), so the game under its policy is a finite graph of states. States
    from which the adversary can force the engine to get stuck are losses;
    states from which every line ends with the adversary stuck are wins,
    ranked by the longest such line; anything else lets the adversary play
    forever.
    """
    # ("E", pos, previous, last): engine to move; ("A", pos): adversary to move
    root = ("E", start, None, None) if engine_first else ("A", start)
    succ: dict = {root: None}
    via: dict = {}
    escalations: list[tuple[str, int, int]] = []
    queue = deque([root])
    while queue:
        s = queue.popleft()
        children = []
        if s[0] == "E":
            _, pos, previous, last = s
            mv = engine_reply(g, labeling, pos, previous, last, use_counter)
            if mv is not None:
                if last is not None and _fired(g, labeling, previous, last, use_counter):
                    escalations.append((mv.dst, labeling.counter[last.src], labeling.counter[mv.dst]))
                nxt = mv.apply(pos)
                child = ("A", nxt)
                via[s, child] = Ply("engine", mv, position_sigma(labeling, pos), position_sigma(labeling, nxt))
                children.append(child)
        else:
            pos = s[1]
            before = position_sigma(labeling, pos)
            for mv in legal_moves(g, pos):
                nxt = mv.apply(pos)
                child = ("E", nxt, pos, mv)
                via[s, child] = Ply("adversary", mv, before, position_sigma(labeling, nxt))
                children.append(child)
        succ[s] = children
        for c in children:
            if c not in succ:
                succ[c] = None
                if len(succ) > max_states:
                    raise BudgetExceeded(f"exhaustive simulation exceeded {max_states} states")
                queue.append(c)

    preds: dict = {s: [] for s in succ}
    for s, children in succ.items():
        for c in children:
            preds[c].append(s)

    # the adversary can force the engine into a stuck state
    loss = {s for s, ch in succ.items() if s[0] == "E" and not ch}
    work = deque(loss)
    while work:
        c = work.popleft()
        for p in preds[c]:
            if p not in loss:
                loss.add(p)
                work.append(p)

    # every line ends with the adversary stuck; rank is the longest such line in plies
    rank = {s: 0 for s, ch in succ.items() if s[0] == "A" and not ch}
    left = {s: len(ch) for s, ch in succ.items()}
    work = deque(rank)
    while work:
        c = work.popleft()
        for p in preds[c]:
            if p in rank or p in loss:
                continue
            left[p] -= 1
            if left[p] == 0:
                rank[p] = rank[c] + 1
                work.append(p)

    def badness(s):
        if s in loss:
            return (0, 0)
        if s in rank:
            return (2, -rank[s])
        return (1, 0)

    line: list[Ply] = []
    s, seen = root, set()
    while succ[s] and len(line) < max_plies and s not in seen:
        seen.add(s)
        c = min(succ[s], key=badness)
        line.append(via[s, c])
        s = c

    if root in loss:
        res = Result.ENGINE_LOSS
    elif root in rank and rank[root] <= max_plies:
        res = Result.ENGINE_WIN
    else:
        res = Result.DRAW_CUTOFF
    return SimulationResult(res, line, escalations, states=len(succ))
