"""Exit criteria, one test each; a PASS/FAIL line per criterion is printed in the terminal summary."""

import itertools
import random
import time

from cyclic_sg.dsl import load
from cyclic_sg.gamma_engine import compute_gamma, gamma_prime, validate_labeling
from cyclic_sg.graph_core import fig2_family, fig2_heap_sizes, longest_path, path_bounds, unbounded_fan
from cyclic_sg.nim_algebra import Inf, gnim_sum, mex, sigma
from cyclic_sg.oracle import classic_sg, oracle_classify, random_graph
from cyclic_sg.sample import sample_problem_path
from cyclic_sg.strategy import MoveKind, Outcome, Result, best_move, classify, outcome_of, simulate

from acceptance_log import criterion
from corpus import closed_walk_length, full_corpus, positions, random_corpus, random_dags


def test_01_sample_problem_algebra():
    with criterion(1, "sample-problem algebra"):
        t0 = time.perf_counter()
        s = sigma([1, 3, 2, 4, Inf({0, 1, 2, 3, 4})])
        out = outcome_of(s)
        after = sigma([1, 3, 2, 4, 4])
        elapsed = time.perf_counter() - t0
        assert s == Inf({0, 4, 5, 6, 7})
        assert out is Outcome.N
        assert after == 0
        assert elapsed < 1e-3


def test_02_sample_problem_end_to_end():
    with criterion(2, "sample-problem end to end"):
        t0 = time.perf_counter()
        g, tokens = load(sample_problem_path().read_bytes())
        lab = compute_gamma(g)
        assert sorted((lab.gamma[v] for v in tokens), key=str) == sorted([1, 3, 2, 4, Inf(range(5))], key=str)
        mv = best_move(g, lab, tokens)
        assert isinstance(lab.gamma[mv.src], Inf)
        assert lab.gamma[mv.dst] == 4 and mv.kind is MoveKind.WINNING
        after = mv.apply(tokens)
        assert classify(g, lab, after) is Outcome.P
        res = simulate(g, lab, after, engine_side="second", adversary="exhaustive")
        assert res.result is Result.ENGINE_WIN
        assert time.perf_counter() - t0 < 60


def test_03_ladder_structure():
    with criterion(3, "ladder family structure"):
        g = fig2_family(8)
        for i in range(9):
            down, up = fig2_heap_sizes(i)
            assert longest_path(g, f"u:{i}") == (4 * i + 11) // 3
            assert down == (4 * i + 8) // 3 and up == (i + 2) // 3
            assert sum(v.startswith(f"G{i}:") for v in g.vertices) == down + 1
            assert sum(v.startswith(f"H{i}:") for v in g.vertices) == up + 1
            heap = [f"G{i}:{down - d}" for d in range(down + 1)]
            assert closed_walk_length(g, heap[: i + 1]) == i + 1
            assert closed_walk_length(g, [f"u:{i}", *heap[: i + 2]]) == i + 3


def test_04_path_length_bounds():
    with criterion(4, "value and mex bounded by longest path"):
        t0 = time.perf_counter()
        for name, g in full_corpus():
            lab = compute_gamma(g)
            lp = path_bounds(g).per_vertex
            for u in g.vertices:
                assert gamma_prime(g, lab.gamma, u) <= lp[u], (name, u)
                if lab.finite(u):
                    assert lab.gamma[u] <= lp[u], (name, u)
        assert time.perf_counter() - t0 < 120


def test_05_labeling_conditions_and_uniqueness():
    with criterion(5, "labeling satisfies A/B/C; unique under 20 scan orders"):
        rng = random.Random(2024)
        for name, g in full_corpus():
            base = compute_gamma(g)
            assert validate_labeling(g, base).ok, name
            for _ in range(20):
                order = list(g.vertices)
                rng.shuffle(order)
                other = compute_gamma(g, order)
                assert other.gamma == base.gamma, name
                assert validate_labeling(g, other).ok, name


def test_06_classification_matches_oracle():
    with criterion(6, "classification equals retrograde oracle (<=3 tokens)"):
        t0 = time.perf_counter()
        checked = 0
        for seed, g in random_corpus():
            lab = compute_gamma(g)
            table = {}
            for start in positions(g, 3):
                if start not in table:
                    table.update(oracle_classify(g, start))
                assert classify(g, lab, start) is table[start], (seed, start)
                checked += 1
        assert checked > 10_000
        assert time.perf_counter() - t0 < 300


def test_07_dag_equivalence():
    with criterion(7, "acyclic graphs agree with classic Sprague-Grundy"):
        count = 0
        for seed, g in random_dags():
            assert g.is_acyclic()
            assert compute_gamma(g).gamma == classic_sg(g), seed
            count += 1
        assert count == 100


def test_08_leafless_and_fan():
    with criterion(8, "leafless graphs all inf(); fan value n+1 up to n=20"):
        leafless = 0
        for seed in range(1, 300):
            g = random_graph(seed, 1 + seed % 12, 0.35)
            if g.leaves():
                continue
            leafless += 1
            assert set(compute_gamma(g).gamma.values()) == {Inf()}
        assert leafless >= 50
        for n in range(21):
            assert compute_gamma(unbounded_fan(n)).gamma["u"] == n + 1


def test_09_draws():
    with criterion(9, "two infinite tokens draw; no engine loss from draws"):
        for name, g in full_corpus():
            lab = compute_gamma(g)
            infs = [v for v in g.vertices if isinstance(lab.gamma[v], Inf)]
            for a, b in itertools.combinations_with_replacement(infs[:6], 2):
                assert classify(g, lab, (a, b)) is Outcome.D
                for extra in g.vertices[:4]:
                    assert classify(g, lab, tuple(sorted((a, b, extra)))) is Outcome.D
        runs = 0
        for seed in range(1, 21):
            for _, g in random_corpus(range(seed, seed + 5)):
                lab = compute_gamma(g)
                draws = [p for p in positions(g, 2) if p and classify(g, lab, p) is Outcome.D]
                for p in draws[:3]:
                    for side in ("first", "second"):
                        res = simulate(g, lab, p, side, "seeded-random", seed=seed, max_plies=1000)
                        assert res.result is not Result.ENGINE_LOSS
                        runs += 1
        assert runs > 100


def test_10_algebra_laws():
    with criterion(10, "Nim-sum laws, 10^5 randomized checks"):
        rng = random.Random(10)

        def value():
            if rng.random() < 0.6:
                return rng.randrange(1 << rng.randrange(1, 12))
            return Inf(rng.sample(range(40), rng.randrange(6)))

        for _ in range(100_000):
            a, b, c = value(), value(), value()
            assert gnim_sum(a, b) == gnim_sum(b, a)
            assert gnim_sum(gnim_sum(a, b), c) == gnim_sum(a, gnim_sum(b, c))
            assert gnim_sum(0, a) == a == gnim_sum(a, 0)
            if not isinstance(a, Inf):
                assert gnim_sum(a, a) == 0
            s = set(rng.sample(range(12), rng.randrange(12)))
            m = mex(s)
            assert m not in s and all(k in s for k in range(m))
