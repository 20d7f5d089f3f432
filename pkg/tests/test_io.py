import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ixlocal.graphs import DirectedGraph, UndirectedGraph
from ixlocal.io import FormatError, dumps_graph, dumps_problem, loads_graph, loads_problem, parse_graph, parse_problem
from ixlocal.problem import build_bstar, build_bstar_sub


def test_parse_fixture_files(fixtures_dir):
    g = parse_graph(fixtures_dir / "c5.txt")
    assert isinstance(g, UndirectedGraph) and len(g.edges) == 5
    assert parse_problem(fixtures_dir / "bstar.json") == build_bstar()


def test_directed_and_edgeless_graphs():
    g = loads_graph("vertices: 1 2 3\n1 -> 2\n2 -> 3  # trailing comment\n")
    assert isinstance(g, DirectedGraph) and g.edges == {(1, 2), (2, 3)}
    assert loads_graph("# header\nvertices: 4 5\n") == UndirectedGraph([4, 5])


@pytest.mark.parametrize("text, fragment", [
    ("", "empty graph file"),
    ("1 -- 2\n", "expected 'vertices"),
    ("vertices: a b\n", "integers"),
    ("vertices: 1 2\n1 -> 2\n2 -- 1\n", "mixes"),
    ("vertices: 1 2\n1 -- 3\n", "undeclared"),
    ("vertices: 1 2\n1 -- 1\n", "self-loop"),
    ("vertices: 1 2\n1 => 2\n", "cannot parse"),
])
def test_graph_format_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        loads_graph(text, "g.txt")


def test_error_carries_line_number():
    with pytest.raises(FormatError) as info:
        loads_graph("vertices: 1 2\n\n1 ~ 2\n", "g.txt")
    assert info.value.line == 3 and "g.txt" in str(info.value)


@pytest.mark.parametrize("text, fragment", [
    ("", "empty problem"),
    ("{", "invalid JSON"),
    ("[]", "receivers"),
    ('{"N": 2, "receivers": [{"wants": [1], "knows": [1]}]}', "both wants and knows"),
    ('{"N": 2, "receivers": [{"wants": [1, 2]}, {"wants": [2]}]}', "not unicast"),
    ('{"N": 3, "messages": [1, 2], "receivers": [{"wants": [1, 2]}]}', "N=3"),
    ('{"receivers": [{"wants": "x"}]}', "malformed"),
])
def test_problem_format_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        loads_problem(text)


def test_problem_round_trip_keeps_labels():
    p = build_bstar_sub([2, 7, 10])
    text = dumps_problem(p)
    assert '"messages"' in text
    assert loads_problem(text) == p
    assert '"messages"' not in dumps_problem(build_bstar())


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.booleans(),
    st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=15),
)))
def test_graph_round_trip(data):
    n, directed, pairs = data
    pairs = [(i, j) for i, j in pairs if i != j]
    g = DirectedGraph(range(n), pairs) if directed else UndirectedGraph(range(n), pairs)
    back = loads_graph(dumps_graph(g))
    if not pairs:
        # no edges: the text format cannot tell the kinds apart
        assert back.vertices == g.vertices and not back.edges
    else:
        assert back == g
