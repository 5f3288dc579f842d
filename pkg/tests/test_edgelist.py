"""Edge-list and node-sidecar text formats."""

import numpy as np
import pytest

from slepnet.edgelist import (
    load_graph,
    read_edge_list,
    read_node_table,
    write_edge_list,
    write_node_table,
)
from slepnet.graph import GraphValidationError, build_graph

from conftest import random_connected_graph


def test_edge_list_round_trip(tmp_path, rng):
    g = random_connected_graph(15, rng)
    path = tmp_path / "edges.tsv"
    write_edge_list(path, g)
    edges, n = read_edge_list(path)
    g2 = build_graph(edges, n)
    assert g2.node_count == g.node_count
    assert np.array_equal(g2.edge_weight, g.edge_weight)
    assert np.array_equal(g2.edge_i, g.edge_i)


def test_round_trip_preserves_isolated_nodes(tmp_path):
    g = build_graph([(0, 1, 0.5)], 5)
    path = tmp_path / "edges.tsv"
    write_edge_list(path, g)
    _, n = read_edge_list(path)
    assert n == 5


def test_comments_and_blank_lines_ignored(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# a comment\n\n0 1 1.5\n# another\n2 0 2.5\n")
    edges, n = read_edge_list(path)
    assert edges == [(0, 1, 1.5), (2, 0, 2.5)]
    assert n == 3


def test_malformed_line_reports_position(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("0 1 1.0\n0 2\n")
    with pytest.raises(GraphValidationError, match=":2:"):
        read_edge_list(path)


def test_node_table_round_trip(tmp_path):
    g = build_graph(
        [(0, 1, 1.0), (1, 2, 2.0)],
        3,
        node_labels=["AAA", "BBB", "CCC"],
        node_positions=[(2.0, 48.0), (13.0, 52.0), (36.8, -1.3)],
        node_attributes={"continent": ["Europe", "Europe", "Africa"]},
    )
    epath, npath = tmp_path / "e.tsv", tmp_path / "n.tsv"
    write_edge_list(epath, g)
    write_node_table(npath, g)
    g2 = load_graph(epath, npath)
    assert g2.node_labels == g.node_labels
    assert np.array_equal(g2.node_positions, g.node_positions)
    assert g2.node_attributes == g.node_attributes


def test_node_table_3d_positions(tmp_path):
    g = build_graph([(0, 1, 1.0)], 2, node_positions=[(0.1, 0.2, 0.3), (0.4, 0.5, 0.6)])
    npath = tmp_path / "n.tsv"
    write_node_table(npath, g)
    meta = read_node_table(npath)
    assert meta["node_positions"].shape == (2, 3)
    assert meta["node_positions"][1][2] == 0.6


def test_load_graph_without_sidecar(tmp_path):
    g = build_graph([(0, 1, 1.0)], 2)
    epath = tmp_path / "e.tsv"
    write_edge_list(epath, g)
    g2 = load_graph(epath, tmp_path / "missing.tsv")
    assert g2.node_labels is None
