"""Command-line entry point: ``cyclic-sg <command> <file> [options]``.

Exit status is 0 on success, 1 on a domain error (bad graph file, failed
check, budget exceeded) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import TextIO

from .dsl import SpecError, export, load
from .gamma_engine import compute_gamma, gamma_prime, validate_labeling
from .graph_core import BudgetExceeded, GraphError, longest_path
from .oracle import oracle_classify
from .strategy import (
    Move,
    StrategyError,
    best_move,
    classify,
    engine_reply,
    legal_moves,
    position_sigma,
    simulate,
)


class CheckFailed(Exception):
    pass


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    g, tokens = load(data)
    return g, tokens, compute_gamma(g)


def cmd_gamma(args, out):
    _, _, lab = _load(args.file)
    print(lab.render(), file=out)


def cmd_classify(args, out):
    g, tokens, lab = _load(args.file)
    print(f"{classify(g, lab, tokens).value} sigma={position_sigma(lab, tokens)}", file=out)


def cmd_bestmove(args, out):
    g, tokens, lab = _load(args.file)
    mv = best_move(g, lab, tokens, use_counter=not args.no_counter)
    if mv is None:
        print("none", file=out)
        return
    print(f"{mv} {mv.kind.value} sigma={position_sigma(lab, mv.apply(tokens))}", file=out)


def cmd_oracle(args, out):
    g, tokens, _ = _load(args.file)
    table = oracle_classify(g, tokens, args.budget)
    print(f"{table[tokens].value} states={len(table)}", file=out)


def cmd_check(args, out):
    g, tokens, lab = _load(args.file)
    failed = False

    def report(name, ok, detail=""):
        nonlocal failed
        failed |= ok is False
        status = {True: "ok", False: "FAIL", None: "skipped"}[ok]
        print(f"{name} {status}{' ' + detail if detail else ''}", file=out)

    rep = validate_labeling(g, lab)
    for cond, errs in (
        ("condition-A", rep.condition_A_violations),
        ("condition-B", rep.condition_B_violations),
        ("condition-C", rep.condition_C_violations),
    ):
        report(cond, not errs, "; ".join(f"{v}: {m}" for v, m in errs[:3]))

    rng = random.Random(args.seed)
    same = True
    for _ in range(args.permutations):
        order = list(g.vertices)
        rng.shuffle(order)
        other = compute_gamma(g, order)
        same &= dict(other.gamma) == dict(lab.gamma) and validate_labeling(g, other).ok
    report("uniqueness", same, f"permutations={args.permutations}")

    try:
        worst = []
        for u in g.vertices:
            b = longest_path(g, u, args.path_budget)
            x = lab.gamma[u]
            if (lab.finite(u) and x > b) or gamma_prime(g, lab.gamma, u) > b:
                worst.append(u)
        report("path-bounds", not worst, ", ".join(worst[:5]))
    except BudgetExceeded:
        report("path-bounds", None, "longest-path budget exceeded")

    try:
        table = oracle_classify(g, tokens, args.budget)
        bad = [p for p, o in table.items() if classify(g, lab, p) is not o]
        report("oracle-agreement", not bad, f"states={len(table)}")
    except BudgetExceeded:
        report("oracle-agreement", None, "state budget exceeded")
    if failed:
        raise CheckFailed("one or more checks failed")


def cmd_simulate(args, out):
    g, tokens, lab = _load(args.file)
    res = simulate(
        g,
        lab,
        tokens,
        engine_side=args.engine_side,
        adversary=args.adversary,
        seed=args.seed,
        max_plies=args.max_plies,
        use_counter=not args.no_counter,
    )
    print(res.render(), file=out)


def cmd_export(args, out):
    g, tokens, lab = _load(args.file)
    out.write(export(g, lab, args.format, tokens))


def cmd_play(args, out, inp: TextIO | None = None):
    """Human against engine; the human enters ``<from> <to>``, ``moves`` or ``quit``."""
    inp = inp or sys.stdin
    g, pos, lab = _load(args.file)
    human_turn = args.engine_side == "second"
    previous = last = None

    def show():
        print(f"position: {' '.join(pos) or '(empty)'}  sigma={position_sigma(lab, pos)} "
              f"[{classify(g, lab, pos).value}]", file=out)

    show()
    while True:
        if human_turn:
            if not any(True for _ in legal_moves(g, pos)):
                print("you cannot move: engine wins", file=out)
                return
            print("> ", end="", file=out, flush=True)
            line = inp.readline()
            if not line or line.strip() == "quit":
                print("bye", file=out)
                return
            words = line.split()
            if words == ["moves"]:
                print(" ".join(str(m) for m in legal_moves(g, pos)), file=out)
                continue
            if len(words) != 2:
                print("enter: <from> <to>", file=out)
                continue
            mv = Move(*words)
            if mv.src not in pos or mv.dst not in g.followers.get(mv.src, ()):
                print(f"illegal move {mv}", file=out)
                continue
        else:
            mv = engine_reply(g, lab, pos, previous, last)
            if mv is None:
                print("engine cannot move: you win", file=out)
                return
            print(f"engine plays {mv} ({mv.kind.value})", file=out)
        previous, pos, last = pos, mv.apply(pos), mv
        human_turn = not human_turn
        show()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclic-sg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    add("gamma", cmd_gamma, "print gamma and counter for every vertex")
    add("classify", cmd_classify, "P/N/D class of the token position")
    sp = add("bestmove", cmd_bestmove, "best move from the token position")
    sp.add_argument("--no-counter", action="store_true")
    sp = add("oracle", cmd_oracle, "brute-force classification of the token position")
    sp.add_argument("--budget", type=int, default=10**6)
    sp = add("check", cmd_check, "validate the labeling and cross-check invariants")
    sp.add_argument("--permutations", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=10**5)
    sp.add_argument("--path-budget", type=int, default=10**6)
    sp = add("simulate", cmd_simulate, "engine self-play against an adversary")
    sp.add_argument("--adversary", choices=["exhaustive", "seeded-random"], default="seeded-random")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-plies", type=int, default=1000)
    sp.add_argument("--engine-side", choices=["first", "second"], default="first")
    sp.add_argument("--no-counter", action="store_true")
    sp = add("play", cmd_play, "play against the engine in the terminal")
    sp.add_argument("--engine-side", choices=["first", "second"], default="second")
    sp = add("export", cmd_export, "export graph and labeling")
    sp.add_argument("--format", choices=["dot", "json"], default="json")
    return p


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.fn(args, out)
    except (SpecError, GraphError, StrategyError, BudgetExceeded, CheckFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
