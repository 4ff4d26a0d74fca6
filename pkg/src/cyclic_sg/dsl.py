"""Line-oriented text format for game graphs with token placements, plus exporters.

Grammar, one declaration per line::

    v <id>                  declare a vertex
    e <src> <dst>           edge; both ends must be declared somewhere in the file
    nimheap <prefix> <r>    Nim-heap prefix:0..prefix:r
    fig2 <imax>             ladder family truncated at column imax
    fan <n>                 vertex u over heaps of sizes 0..n
    tokens <id> ...         token placements (repeatable, multiplicity allowed)

``#`` starts a comment, blank lines are ignored, repeated edges collapse.
A document whose first non-blank character is ``{`` is read as the JSON
export format instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .gamma_engine import Labeling
from .graph_core import VERTEX_ID, GameGraph, GraphError, build_graph, fig2_family, nim_heap, unbounded_fan
from .nim_algebra import Inf
from .strategy import Position, make_position


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Decl:
    kind: str
    args: tuple
    line: int


@dataclass
class GraphSpec:
    declarations: list[Decl] = field(default_factory=list)

    def build(self) -> tuple[GameGraph, Position]:
        """Expand the declarations into a graph and the token position."""
        vertices: dict[str, int] = {}
        edges: list[tuple[str, str]] = []
        edge_lines: list[int] = []
        tokens: list[tuple[str, int]] = []

        def add_graph(g: GameGraph, line: int) -> None:
            for v in g.vertices:
                declare(v, line)
            edges.extend(g.edges())
            edge_lines.extend([line] * len(g.edges()))

        def declare(v: str, line: int) -> None:
            if v in vertices:
                raise SpecError(f"vertex {v!r} already declared on line {vertices[v]}", line)
            vertices[v] = line

        for d in self.declarations:
            if d.kind == "v":
                declare(d.args[0], d.line)
            elif d.kind == "e":
                edges.append(d.args)
                edge_lines.append(d.line)
            elif d.kind == "nimheap":
                add_graph(nim_heap(d.args[0], d.args[1]), d.line)
            elif d.kind == "fig2":
                add_graph(fig2_family(d.args[0]), d.line)
            elif d.kind == "fan":
                add_graph(unbounded_fan(d.args[0]), d.line)
            elif d.kind == "tokens":
                tokens.extend((t, d.line) for t in d.args)
        for (a, b), line in zip(edges, edge_lines):
            for end in (a, b):
                if end not in vertices:
                    raise SpecError(f"undeclared vertex {end!r}", line)
        for t, line in tokens:
            if t not in vertices:
                raise SpecError(f"token on undeclared vertex {t!r}", line)
        try:
            g = build_graph(vertices, edges)
        except GraphError as exc:
            raise SpecError(str(exc)) from None
        return g, make_position(t for t, _ in tokens)


_ARITY = {"v": 1, "e": 2, "nimheap": 2, "fig2": 1, "fan": 1}
# generator arguments are capped so a short document cannot request an enormous graph
GENERATOR_LIMITS = {"nimheap": 1000, "fan": 200, "fig2": 100}


def _ident(text: str, line: int) -> str:
    if not VERTEX_ID.fullmatch(text):
        raise SpecError(f"invalid identifier {text!r}", line)
    return text


def _natural(text: str, line: int, kw: str) -> int:
    if not text.isascii() or not text.isdigit():
        raise SpecError(f"malformed integer {text!r}", line)
    n = int(text)
    if n > GENERATOR_LIMITS[kw]:
        raise SpecError(f"{kw} argument {n} exceeds {GENERATOR_LIMITS[kw]}", line)
    return n


def parse_spec(text: str | bytes) -> GraphSpec:
    """Parse a document and check that it expands; errors carry a line number."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = text[: exc.start].count(b"\n") + 1
            raise SpecError("invalid UTF-8", line) from None
    if text.lstrip().startswith("{"):
        spec = _parse_json(text)
    else:
        spec = GraphSpec()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].split()
            if not body:
                continue
            kw, args = body[0], body[1:]
            if kw == "tokens":
                spec.declarations.append(Decl(kw, tuple(_ident(a, lineno) for a in args), lineno))
                continue
            if kw not in _ARITY:
                raise SpecError(f"unknown keyword {kw!r}", lineno)
            if len(args) != _ARITY[kw]:
                raise SpecError(f"{kw} takes {_ARITY[kw]} argument(s), got {len(args)}", lineno)
            if kw in ("v", "e"):
                parsed = tuple(_ident(a, lineno) for a in args)
            elif kw == "nimheap":
                parsed = (_ident(args[0], lineno), _natural(args[1], lineno, kw))
            else:
                parsed = (_natural(args[0], lineno, kw),)
            spec.declarations.append(Decl(kw, parsed, lineno))
    spec.build()
    return spec


def _parse_json(text: str) -> GraphSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise SpecError("JSON document must be an object", 1)
    spec = GraphSpec()
    try:
        for v in doc.get("vertices", []):
            spec.declarations.append(Decl("v", (_ident(v, 1),), 1))
        for pair in doc.get("edges", []):
            a, b = pair
            spec.declarations.append(Decl("e", (_ident(a, 1), _ident(b, 1)), 1))
        toks = doc.get("tokens", [])
        if toks:
            spec.declarations.append(Decl("tokens", tuple(_ident(t, 1) for t in toks), 1))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"malformed JSON graph: {exc}", 1) from None
    return spec


def load(text: str | bytes) -> tuple[GameGraph, Position]:
    return parse_spec(text).build()


def to_dsl(g: GameGraph, tokens: Position = ()) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"e {a} {b}" for a, b in g.edges()]
    if tokens:
        lines.append("tokens " + " ".join(tokens))
    return "\n".join(lines) + "\n"


def _json_value(x):
    return str(x) if isinstance(x, Inf) else x


def export(g: GameGraph, labeling: Labeling | None = None, fmt: str = "json", tokens: Position = ()) -> str:
    """Render as ``dot`` (values as node labels) or ``json``."""
    if fmt == "json":
        doc: dict = {
            "vertices": list(g.vertices),
            "edges": [[a, b] for a, b in g.edges()],
            "tokens": list(tokens),
        }
        if labeling is not None:
            doc["gamma"] = {v: _json_value(labeling.gamma[v]) for v in g.vertices}
            doc["counter"] = {v: labeling.counter[v] for v in g.vertices if v in labeling.counter}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "dot":
        out = ["digraph G {"]
        for v in g.vertices:
            attrs = [f'label="{labeling.gamma[v]}"', f'xlabel="{v}"'] if labeling is not None else [f'label="{v}"']
            if v in tokens:
                attrs.append("style=filled")
            out.append(f'  "{v}" [{", ".join(attrs)}];')
        for a, b in g.edges():
            out.append(f'  "{a}" -> "{b}";')
        out.append("}")
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")
