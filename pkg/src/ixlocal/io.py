"""Reading and writing problem files (JSON) and graph files (line-based text)."""

from __future__ import annotations

import json
import re
from pathlib import Path

from .graphs import DirectedGraph, Graph, UndirectedGraph
from .problem import Receiver, UnicastProblem, validate


class FormatError(ValueError):
    def __init__(self, source: str, line: int | None, message: str):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


_EDGE = re.compile(r"^(-?\d+)\s*(->|--)\s*(-?\d+)$")


def loads_graph(text: str, source: str = "<string>") -> Graph:
    """Parse the graph text format.

    The first meaningful line is ``vertices: 1 2 3``; each later line is
    ``i -> j`` (directed) or ``i -- j`` (undirected). ``#`` starts a comment.
    A file without edges gives an undirected graph.
    """
    vertices = None
    kind = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if vertices is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "vertices":
                raise FormatError(source, lineno, "expected 'vertices: ...' before any edge")
            try:
                vertices = [int(tok) for tok in rest.split()]
            except ValueError:
                raise FormatError(source, lineno, "vertex labels must be integers") from None
            continue
        m = _EDGE.match(line)
        if not m:
            raise FormatError(source, lineno, f"cannot parse edge {line!r}")
        arrow = m.group(2)
        if kind is not None and arrow != kind:
            raise FormatError(source, lineno, "mixes directed (->) and undirected (--) edges")
        kind = arrow
        edges.append((int(m.group(1)), int(m.group(3)), lineno))
    if vertices is None:
        raise FormatError(source, None, "empty graph file (missing 'vertices:' line)")
    vset = set(vertices)
    for i, j, lineno in edges:
        if i == j:
            raise FormatError(source, lineno, f"self-loop on vertex {i}")
        if i not in vset or j not in vset:
            raise FormatError(source, lineno, f"edge {i} {kind} {j} uses an undeclared vertex")
    pairs = [(i, j) for i, j, _ in edges]
    if kind == "->":
        return DirectedGraph(vertices, pairs)
    return UndirectedGraph(vertices, pairs)


def dumps_graph(g: Graph) -> str:
    lines = ["vertices: " + " ".join(str(v) for v in g.vertices)]
    if isinstance(g, DirectedGraph):
        lines += [f"{i} -> {j}" for i, j in sorted(g.edges)]
    else:
        lines += [f"{i} -- {j}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(path: str | Path) -> Graph:
    path = Path(path)
    return loads_graph(path.read_text(), str(path))


def loads_problem(text: str, source: str = "<string>") -> UnicastProblem:
    """Parse ``{"N": 12, "receivers": [{"wants": [...], "knows": [...]}, ...]}``.

    Messages are ``1..N`` unless an explicit ``"messages"`` list is given.
    The result is validated; violations raise :class:`FormatError`.
    """
    if not text.strip():
        raise FormatError(source, 1, "empty problem file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(source, exc.lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or "receivers" not in data:
        raise FormatError(source, None, "expected an object with a 'receivers' list")
    try:
        receivers = [Receiver(r.get("wants", []), r.get("knows", [])) for r in data["receivers"]]
        if "messages" in data:
            messages = [int(j) for j in data["messages"]]
        elif "N" in data:
            messages = int(data["N"])
        else:
            messages = None
    except (TypeError, ValueError, AttributeError) as exc:
        raise FormatError(source, None, f"malformed problem: {exc}") from None
    p = UnicastProblem(receivers, messages)
    if "N" in data and "messages" in data and int(data["N"]) != p.N:
        raise FormatError(source, None, f"N={data['N']} but {p.N} messages are listed")
    violations = validate(p)
    if violations:
        raise FormatError(source, None, "invalid problem: " + "; ".join(violations))
    return p


def dumps_problem(p: UnicastProblem) -> str:
    data = p.to_json()
    if data["messages"] == list(range(1, p.N + 1)):
        del data["messages"]
    return json.dumps(data, indent=2) + "\n"


def parse_problem(path: str | Path) -> UnicastProblem:
    path = Path(path)
    return loads_problem(path.read_text(), str(path))
