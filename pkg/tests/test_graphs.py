import json

import pytest

from permsol import groupio
from permsol.graphs import (
    are_independent,
    export_graph,
    prime_graph,
    soluble_edges_by_subgroup_enumeration,
    soluble_graph,
)


def test_prime_graph_examples():
    g = prime_graph(groupio.builtin("A5"), label="A5")
    assert g.vertices == [2, 3, 5]
    assert g.edges == []
    g = prime_graph(groupio.builtin("C6"), label="C6")
    assert g.vertices == [2, 3]
    assert g.edges == [(2, 3)]
    g = prime_graph(groupio.builtin("S4"), label="S4")
    assert g.vertices == [2, 3]
    assert g.edges == []


def test_soluble_graph_a5():
    g = soluble_graph(groupio.builtin("A5"), label="A5")
    assert g.vertices == [2, 3, 5]
    assert g.edges == [(2, 3), (2, 5)]


def test_soluble_graph_of_soluble_group_is_complete():
    for name in ["C30", "S4", "D12", "C210"]:
        G = groupio.builtin(name)
        g = soluble_graph(G, label=name)
        n = len(g.vertices)
        assert len(g.edges) == n * (n - 1) // 2, name


def test_are_independent_examples():
    A5 = groupio.builtin("A5")
    assert are_independent(A5, 3, 5)
    assert are_independent(A5, 5, 3)  # symmetric
    assert not are_independent(A5, 2, 3)
    with pytest.raises(ValueError):
        are_independent(A5, 3, 3)
    with pytest.raises(ValueError):
        are_independent(A5, 3, 7)  # 7 does not divide 60
    with pytest.raises(ValueError):
        are_independent(A5, 4, 3)  # 4 is not prime


def test_pair_method_matches_subgroup_oracle_small():
    for name in ["A5", "S4", "C30", "D12", "psl2_7", "A6", "S5"]:
        G = groupio.builtin(name)
        pair_edges = soluble_graph(G, label=name).edges
        oracle_edges = soluble_edges_by_subgroup_enumeration(G)
        assert pair_edges == oracle_edges, name


def test_prime_graph_subset_of_soluble_graph():
    for name in ["A5", "S4", "C30", "psl2_7", "S5", "A6"]:
        G = groupio.builtin(name)
        prime_edges = set(prime_graph(G).edges)
        sol_edges = set(soluble_graph(G).edges)
        assert prime_edges <= sol_edges, name


def test_subgroup_edges_monotone():
    # edges of a subgroup's soluble graph persist in the parent (over shared vertices)
    G = groupio.builtin("S5")
    catalog = groupio.enumerate_subgroups(G)
    parent_edges = set(soluble_graph(G).edges)
    for H in catalog.subgroups[::7]:
        if H.order() < 2:
            continue
        for e in soluble_graph(H).edges:
            assert e in parent_edges


def test_export_json_matches_schema():
    g = soluble_graph(groupio.builtin("A5"), label="A5")
    text = export_graph(g, "json")
    assert (
        text == '{"group":"A5","kind":"soluble","vertices":[2,3,5],"edges":[[2,3],[2,5]]}'
    )
    parsed = json.loads(text)
    assert parsed["vertices"] == sorted(parsed["vertices"])


def test_export_dot():
    g = prime_graph(groupio.builtin("C6"), label="C6")
    text = export_graph(g, "dot")
    assert text.startswith("graph G {")
    assert '"2" -- "3";' in text
    iso = prime_graph(groupio.builtin("A5"), label="A5")
    text = export_graph(iso, "dot")
    assert '"5";' in text and "--" not in text
    with pytest.raises(ValueError):
        export_graph(g, "graphml")


def test_parallel_scan_agrees():
    A5 = groupio.builtin("A5")
    assert are_independent(A5, 3, 5, jobs=2)
    assert not are_independent(A5, 2, 3, jobs=2)
