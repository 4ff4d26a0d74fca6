import io
import json
import sys
from argparse import Namespace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_sg import cli
from cyclic_sg.dsl import SpecError, export, load, parse_spec, to_dsl
from cyclic_sg.gamma_engine import compute_gamma
from cyclic_sg.graph_core import build_graph, fig2_family, nim_heap
from cyclic_sg.oracle import random_graph
from cyclic_sg.sample import find_tokens, sample_problem_path, sample_problem_text


def run(argv, capsys=None):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(text, name="g.game"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def test_parse_basic():
    g, tokens = load("v a\nv b\ne a b\ntokens a")
    assert g.vertices == ("a", "b") and g.edges() == [("a", "b")]
    assert tokens == ("a",)


def test_parse_heap():
    g, tokens = load("nimheap h 2\ntokens h:2")
    assert g == nim_heap("h", 2)
    assert tokens == ("h:2",)


def test_comments_blanks_and_duplicate_edges():
    g, tokens = load("# header\n\nv a   # trailing\nv b\ne a b\ne a b\ntokens a a\ntokens b\n")
    assert g.edges() == [("a", "b")]
    assert tokens == ("a", "a", "b")


def test_generators():
    assert load("fig2 3")[0] == fig2_family(3)
    g, _ = load("fan 2")
    assert g.followers["u"] == ("u0:0", "u1:1", "u2:2")


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("e a b", 1, "undeclared vertex 'a'"),
        ("v a\n\nfrob x", 3, "unknown keyword"),
        ("v a b", 1, "takes 1"),
        ("nimheap h x2", 1, "malformed integer"),
        ("nimheap h -1", 1, "malformed integer"),
        ("v a\nv a", 2, "already declared"),
        ("nimheap h 1\nv h:0", 2, "already declared"),
        ("v a\ntokens b", 2, "undeclared"),
        ("v a/b", 1, "invalid identifier"),
        ("fig2 100000", 1, "exceeds"),
    ],
)
def test_errors_are_positioned(text, line, fragment):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_json_round_trip():
    for seed in range(1, 20):
        g = random_graph(seed, 7, 0.3, 0.2)
        tokens = g.vertices[:2]
        text = export(g, compute_gamma(g), "json", tokens)
        assert load(text) == (g, tokens)
        assert load(to_dsl(g, tokens)) == (g, tokens)


def test_json_heap_gamma():
    g = nim_heap("h", 2)
    doc = json.loads(export(g, compute_gamma(g), "json"))
    assert doc["gamma"] == {"h:0": 0, "h:1": 1, "h:2": 2}
    assert doc["counter"] == {"h:0": 0, "h:1": 1, "h:2": 2}


def test_dot_loop_label():
    g = build_graph(["a"], [("a", "a")])
    dot = export(g, compute_gamma(g), "dot")
    assert '"a" [label="inf()", xlabel="a"];' in dot
    assert '"a" -> "a";' in dot


def test_json_errors_positioned():
    with pytest.raises(SpecError) as info:
        load('{\n  "vertices": [1, 2}')
    assert info.value.line == 2
    for bad in ('{"vertices": 3}', '{"edges": [["a"]]}', '{"vertices": ["a"], "edges": [["a", "b"]]}', "[1]"):
        with pytest.raises(SpecError):
            load(bad)


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=200))
def test_parser_total_on_bytes(data):
    try:
        parse_spec(data)
    except SpecError as exc:
        assert exc.line is None or exc.line >= 1


keywords = st.sampled_from(["v", "e", "tokens", "nimheap", "fig2", "fan", "#", "x"])
words = st.text(alphabet="ab:01-9 {}\"[]", max_size=6)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(keywords, st.lists(words, max_size=3)), max_size=8))
def test_parser_total_on_keyword_soup(lines):
    text = "\n".join(" ".join([kw, *args]) for kw, args in lines)
    try:
        parse_spec(text)
    except SpecError as exc:
        assert exc.line is None or exc.line >= 1


def test_cli_gamma_loop(write):
    code, out = run(["gamma", write("v a\ne a a\n")])
    assert (code, out) == (0, "a inf() -\n")


def test_cli_sample_classify_and_bestmove():
    path = str(sample_problem_path())
    assert run(["classify", path]) == (0, "N sigma=inf(0,4,5,6,7)\n")
    code, out = run(["bestmove", path])
    assert code == 0
    assert out == "G7:10->G7:4 Winning sigma=0\n"


def test_bundled_sample_matches_search():
    path = sample_problem_path()
    assert path.read_text() == sample_problem_text()
    g, tokens = load(path.read_text())
    assert tokens == find_tokens(g, compute_gamma(g))


def test_cli_oracle_and_check(write):
    path = write("nimheap h 3\nv a\ne a a\ne a h:1\ntokens h:3 a\n")
    code, out = run(["oracle", path])
    assert (code, out) == (0, "D states=11\n")  # 3 xor inf(1) = inf(2)
    code, out = run(["check", path])
    assert code == 0
    assert "FAIL" not in out and "oracle-agreement ok" in out


def test_cli_simulate_deterministic(write):
    path = write("fig2 3\ntokens u:3 G2:5\n")
    argv = ["simulate", path, "--adversary", "seeded-random", "--seed", "4", "--max-plies", "50"]
    first, second = run(argv), run(argv)
    assert first == second and first[0] == 0
    assert first[1].splitlines()[-1].startswith("result ")


def test_cli_simulate_exhaustive_sample():
    code, out = run(["simulate", str(sample_problem_path()), "--adversary", "exhaustive"])
    assert code == 0
    assert out.splitlines()[-1].startswith("result EngineWin")


def test_cli_export(write):
    code, out = run(["export", write("nimheap h 1\n"), "--format", "json"])
    assert code == 0 and json.loads(out)["gamma"] == {"h:0": 0, "h:1": 1}
    code, out = run(["export", write("nimheap h 1\n"), "--format", "dot"])
    assert code == 0 and out.startswith("digraph G {")


def test_cli_exit_codes(write, capsys):
    assert run(["gamma", write("e a b\n")])[0] == 1
    assert run(["gamma", "/nonexistent/file"])[0] == 1
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        run(["simulate", "x", "--adversary", "psychic"])
    assert info.value.code == 2


def test_cli_check_reports_failure(write, monkeypatch):
    from cyclic_sg import gamma_engine
    from cyclic_sg.nim_algebra import Inf

    path = write("nimheap h 1\n")
    real = gamma_engine.compute_gamma

    def broken(g, order=None, on_label=None):
        lab = real(g, order, on_label)
        return gamma_engine.Labeling({v: Inf() for v in lab.gamma}, {})

    monkeypatch.setattr(cli, "compute_gamma", broken)
    code, out = run(["check", path])
    assert code == 1
    assert "FAIL" in out


def test_play_session(write):
    path = write("nimheap h 2\ntokens h:2\n")
    out = io.StringIO()
    args = Namespace(file=path, engine_side="second")
    cli.cmd_play(args, out, io.StringIO("moves\nh:2 h:1\nquit\n"))
    text = out.getvalue()
    assert "h:2->h:0 h:2->h:1" in text
    assert "engine plays h:1->h:0 (Winning)" in text
    assert "you cannot move: engine wins" in text
