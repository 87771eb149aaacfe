import os
import subprocess
import sys

import pytest

from htl.builders import BASE_K12_N1, BASE_K18_N1, BASE_K9_N2
from htl.labeling import StructureError, canonicalize, verify
from htl.search import (
    CubicGraph,
    DoubleWalk,
    GraphError,
    SearchBudgetError,
    complete_graph_k4,
    double_hamiltonian,
    labeling_to_walk,
    search_labelings,
    walk_to_labeling,
)


def test_divisibility_precheck_certifies_emptiness():
    result = search_labelings(9, 1)
    assert result.complete and len(result) == 0 and result.nodes == 0


def test_search_twelve_gon():
    result = search_labelings(12, 1)
    assert result.complete
    assert canonicalize(BASE_K12_N1) in result.labelings
    for lab in result.labelings:
        assert verify(lab).proper
        assert lab == canonicalize(lab)


def test_search_is_deterministic():
    a = search_labelings(12, 1)
    b = search_labelings(12, 1)
    assert a.labelings == b.labelings


def test_search_limit():
    full = search_labelings(12, 1)
    cut = search_labelings(12, 1, limit=2)
    assert cut.labelings == full.labelings[:2]


def test_search_oriented_18gon():
    result = search_labelings(18, 1, oriented_only=True)
    assert result.complete and len(result) > 0
    assert canonicalize(BASE_K18_N1) in result.labelings
    for lab in result.labelings:
        assert verify(lab).oriented


def test_search_nine_gon_pair_contains_base():
    result = search_labelings(9, 2)
    assert result.complete
    assert canonicalize(BASE_K9_N2) in result.labelings


def test_vertex_budget_enforced():
    with pytest.raises(SearchBudgetError):
        search_labelings(30, 1)
    result = search_labelings(30, 1, vertex_budget=30, node_budget=10_000)
    assert not result.complete  # tiny node budget: truncated, reported as such


def test_degenerate_instances_rejected():
    with pytest.raises(StructureError):
        search_labelings(2, 1)


def test_pure_python_fallback_agrees():
    code = (
        "from htl.search import search_labelings, describe_backend;"
        "r = search_labelings(12, 1);"
        "print(describe_backend(), len(r.labelings), r.complete)"
    )
    env = dict(os.environ, HTL_NO_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    backend, count, complete = out.stdout.split()
    assert backend == "pure-python"
    assert int(count) == len(search_labelings(12, 1).labelings)
    assert complete == "True"


# --- cubic graphs and double walks ------------------------------------------


def test_graph_validation():
    with pytest.raises(GraphError):
        CubicGraph.from_edges([(1, 2), (2, 3), (3, 1)])  # degrees 2
    with pytest.raises(GraphError):
        CubicGraph.from_edges([(1, 1), (1, 2), (2, 3), (2, 3), (3, 1)])  # loop
    k4 = complete_graph_k4()
    two = [(u + 4, v + 4) for u, v in k4.edge_list]
    with pytest.raises(GraphError):
        CubicGraph(8, tuple(sorted(k4.edge_list + tuple(two))))  # disconnected


def test_k4_double_walk_matches_twelve_gon():
    k4 = complete_graph_k4()
    walk = double_hamiltonian(k4)
    assert walk is not None
    # some double walk on K4 carries exactly the base 12-gon labeling
    from htl.search import all_double_walks

    classes = {canonicalize(walk_to_labeling(k4, w)) for w in all_double_walks(k4)}
    assert canonicalize(BASE_K12_N1) in classes
    # and conversely, the base 12-gon's own walk lives on K4
    graph, _ = labeling_to_walk(BASE_K12_N1)
    assert graph.edge_list == k4.edge_list


def test_k4_has_no_both_directions_walk():
    assert double_hamiltonian(complete_graph_k4(), both_directions=True) is None


def test_six_vertex_graph_both_directions():
    graph, walk = labeling_to_walk(BASE_K18_N1)
    assert graph.num_vertices == 6
    assert walk.both_directions()
    found = double_hamiltonian(graph, both_directions=True)
    assert found is not None and found.both_directions()
    lab = walk_to_labeling(graph, found)
    assert verify(lab).proper and verify(lab).oriented


def test_walk_roundtrip_identity():
    graph, walk = labeling_to_walk(BASE_K12_N1)
    assert walk_to_labeling(graph, walk) == BASE_K12_N1
    k4 = complete_graph_k4()
    w = double_hamiltonian(k4)
    lab = walk_to_labeling(k4, w)
    graph2, walk2 = labeling_to_walk(lab)
    assert graph2.edge_list == k4.edge_list
    assert canonicalize(walk_to_labeling(graph2, walk2)) == canonicalize(lab)


def test_labeling_to_walk_preconditions():
    from htl.builders import BASE_K8_N3

    with pytest.raises(GraphError):
        labeling_to_walk(BASE_K8_N3)  # three polygons
    from htl.labeling import Labeling

    with pytest.raises(GraphError):
        # single polygon with adjacent equal labels
        labeling_to_walk(Labeling(((1, 1, 1, 2, 2, 2),), 2))


def test_walk_validation():
    k4 = complete_graph_k4()
    with pytest.raises(GraphError):
        DoubleWalk(k4, (1, 2, 1, 2, 3, 4, 1, 3, 2, 4, 3, 4))  # edge 1-2 twice in a row
