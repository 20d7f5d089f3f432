import pytest

from ixlocal.problem import (
    InvalidProblem,
    Receiver,
    UnicastProblem,
    all_subsets,
    build_bstar,
    build_bstar_sub,
    conflict_graph,
    esup,
    gstar,
    gstar_u,
    identify_bstar_subset,
    side_info_graph,
    subset_label_map,
    validate,
)

# bidirectional pairs of the B* conflict graph, checked by hand from the sets
GSTAR_U_EDGES = [
    (1, 5), (1, 6), (1, 9), (1, 10), (2, 5), (2, 6),
    (3, 9), (3, 10), (5, 9), (5, 11), (7, 9), (7, 11),
]


def test_bstar_matches_the_fixture(bstar_json):
    p = build_bstar()
    assert p.N == 12 and p.n == 3
    assert p.to_json()["receivers"] == bstar_json["receivers"]
    assert validate(p) == []


def test_validate_names_each_violation():
    p = UnicastProblem([Receiver([1], [1, 9]), Receiver([1, 2], [])], 3)
    msgs = validate(p)
    assert any("unknown messages [9]" in m for m in msgs)
    assert any("both wants and knows [1]" in m for m in msgs)
    assert any("receivers 1 and 2" in m for m in msgs)
    assert any("[3] are wanted by no receiver" in m for m in msgs)
    with pytest.raises(InvalidProblem):
        esup(p)


def test_esup_splits_receivers_and_keeps_side_information():
    single, children = esup(build_bstar())
    assert single.n == 12 and single.is_single_unicast
    assert children == ((0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11))
    for (i,), parent in zip([r.wants for r in single.receivers], [0] * 4 + [1] * 4 + [2] * 4):
        assert single.receivers[i - 1].knows == build_bstar().receivers[parent].knows


def test_gstar_in_degrees_by_type():
    g = gstar()
    indeg = {v: len(g.predecessors(v)) for v in g.vertices}
    # known by both other receivers, by one, by none
    assert [indeg[v] for v in (1, 5, 9)] == [8, 8, 8]
    assert [indeg[v] for v in (2, 3, 6, 7, 10, 11)] == [4] * 6
    assert [indeg[v] for v in (4, 8, 12)] == [0, 0, 0]
    assert len(g.edges) == 3 * 4 * 4


def test_gstar_u_edges():
    assert gstar_u().sorted_edges() == GSTAR_U_EDGES
    assert conflict_graph(build_bstar()) == gstar_u()


def test_side_info_graph_needs_single_unicast():
    with pytest.raises(ValueError):
        side_info_graph(build_bstar())


def test_subproblem_keeps_labels_and_empties_receivers():
    p = build_bstar_sub([2, 7, 10])
    assert p.messages == (2, 7, 10)
    assert [sorted(r.wants) for r in p.receivers] == [[2], [7], [10]]
    assert [sorted(r.knows) for r in p.receivers] == [[10], [2], [7]]
    empty = build_bstar_sub([])
    assert empty.N == 0 and validate(empty) == []
    with pytest.raises(ValueError):
        build_bstar_sub([13])


def test_label_map():
    labels = subset_label_map()
    assert labels[1] == "W1∩K2∩K3"
    assert labels[2] == "W1∩K2∩Y3"
    assert labels[4] == "W1∩Y2∩Y3"
    assert labels[11] == "W3∩K2∩Y1"
    assert len(set(labels.values())) == 12


def test_subsets_are_colex():
    subs = all_subsets()
    assert len(subs) == 4096 and len(set(subs)) == 4096
    assert subs[:4] == [frozenset(), {1}, {2}, {1, 2}]


def test_identify_relabelled_subproblem():
    # relabel B*_{2,7,10} as messages 1,2,3
    p = UnicastProblem([Receiver([1], [3]), Receiver([2], [1]), Receiver([3], [2])])
    assert identify_bstar_subset(p) == {1: 2, 2: 7, 3: 10}
    # two messages of one type is not literally a subproblem
    dup = UnicastProblem([Receiver([1, 2], [])], 2)
    assert identify_bstar_subset(dup) is None


def _vertex(owner, known_by):
    # the B* message wanted by `owner` and known exactly by receivers `known_by`
    from ixlocal.problem import BSTAR_KNOWS, BSTAR_WANTS

    (v,) = [v for v in BSTAR_WANTS[owner] if {r for r in range(3) if v in BSTAR_KNOWS[r]} == set(known_by)]
    return v


def test_bidirectional_structure_for_every_receiver_permutation():
    from itertools import permutations

    gu = gstar_u()
    for i, j, k in permutations(range(3)):
        assert gu.neighbors(_vertex(i, {j})) == {_vertex(j, {i}), _vertex(j, {i, k})}
        assert gu.neighbors(_vertex(i, {j, k})) == {
            _vertex(j, {i}), _vertex(k, {i}), _vertex(j, {i, k}), _vertex(k, {i, j})
        }
        assert gu.neighbors(_vertex(i, set())) == frozenset()
    assert gu.neighbors(2) == {5, 6}
    assert [_vertex(r, set()) for r in range(3)] == [4, 8, 12]
