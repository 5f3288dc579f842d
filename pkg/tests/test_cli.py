"""End-to-end CLI runs on small inputs."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from slepnet.cli import main
from slepnet.datasets import fixture_paths
from slepnet.edgelist import load_graph, write_edge_list, write_node_table
from slepnet.graph import build_graph


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fixture_graph_dir(tmp_path, runner):
    airports, routes = fixture_paths()
    out = tmp_path / "graph"
    result = runner.invoke(
        main, ["ingest", "--airports", str(airports), "--routes", str(routes), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    return out


def test_generate_swiss_roll(tmp_path, runner):
    out = tmp_path / "roll"
    result = runner.invoke(
        main,
        ["generate", "swiss-roll", "--nodes", "200", "--seed", "3", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    g = load_graph(out / "edges.tsv", out / "nodes.tsv")
    assert g.node_count == 200
    assert g.node_positions.shape == (200, 3)
    sel_lines = (out / "selection.txt").read_text().splitlines()
    assert sel_lines[0].startswith("# selected")


def test_ingest_fixture(fixture_graph_dir):
    g = load_graph(fixture_graph_dir / "edges.tsv", fixture_graph_dir / "nodes.tsv")
    assert g.node_count == 6
    assert g.node_labels == ("AAA", "BBB", "CCC", "DDD", "EEE", "FFF")


def test_edge_list_round_trip_through_cli(tmp_path, runner, fixture_graph_dir):
    g1 = load_graph(fixture_graph_dir / "edges.tsv", fixture_graph_dir / "nodes.tsv")
    out2 = tmp_path / "copy"
    out2.mkdir()
    write_edge_list(out2 / "edges.tsv", g1)
    write_node_table(out2 / "nodes.tsv", g1)
    g2 = load_graph(out2 / "edges.tsv", out2 / "nodes.tsv")
    assert g1.edges() == g2.edges()
    assert g1.node_labels == g2.node_labels
    assert g1.node_attributes == g2.node_attributes


def test_spectrum_and_slepian_reuse_basis(tmp_path, runner, fixture_graph_dir):
    spec_out = tmp_path / "spec"
    result = runner.invoke(
        main,
        ["spectrum", "--input", str(fixture_graph_dir / "edges.tsv"),
         "--operator", "modularity", "--bandwidth", "4", "--out", str(spec_out)],
    )
    assert result.exit_code == 0, result.output
    assert (spec_out / "basis.npz").exists()
    header, *rows = (spec_out / "eigenvalues.tsv").read_text().splitlines()
    assert header == "k\tvalue\tresidual"
    assert len(rows) == 4

    slep_out = tmp_path / "slep"
    result = runner.invoke(
        main,
        ["slepian", "--input", str(fixture_graph_dir / "edges.tsv"),
         "--operator", "modularity", "--bandwidth", "3",
         "--select-attr", "continent=Africa",
         "--basis", str(spec_out / "basis.npz"), "--out", str(slep_out)],
    )
    assert result.exit_code == 0, result.output
    assert "K=" in result.output
    meta = json.loads((slep_out / "slepians.tsv.meta.json").read_text())
    assert meta["bandwidth"] == 3
    assert meta["selection_size"] == 2
    assert meta["shannon_number"] == pytest.approx(3 * 2 / 6)
    mu_rows = (slep_out / "mu.tsv").read_text().splitlines()[1:]
    assert len(mu_rows) == 3


def test_slepian_full_selection_matches_raw_embedding(tmp_path, runner, fixture_graph_dir):
    # Slepian frame with the full selection spans the raw eigenvector view.
    slep_out = tmp_path / "full"
    result = runner.invoke(
        main,
        ["slepian", "--input", str(fixture_graph_dir / "edges.tsv"),
         "--operator", "modularity", "--bandwidth", "2",
         "--select-nodes", "all", "--out", str(slep_out)],
    )
    assert result.exit_code == 0, result.output
    raw_out = tmp_path / "raw"
    result = runner.invoke(
        main,
        ["embed", "--input", str(fixture_graph_dir / "edges.tsv"),
         "--operator", "modularity", "--bandwidth", "2", "--out", str(raw_out)],
    )
    assert result.exit_code == 0, result.output

    def frame_coords(path):
        lines = path.read_text().splitlines()[1:]
        return np.array([[float(line.split("\t")[2]), float(line.split("\t")[3])] for line in lines])

    a = frame_coords(slep_out / "frame.tsv")
    b = frame_coords(raw_out / "frame.tsv")
    # Same span up to per-column sign: concentrations are all 1 for the full
    # selection, so the Slepian vectors equal the eigenvectors up to signs.
    for col in range(2):
        assert min(np.max(np.abs(a[:, col] - b[:, col])),
                   np.max(np.abs(a[:, col] + b[:, col]))) < 1e-8


def test_sweep_writes_per_bandwidth_tables(tmp_path, runner, fixture_graph_dir):
    out = tmp_path / "sweep"
    result = runner.invoke(
        main,
        ["sweep", "--input", str(fixture_graph_dir / "edges.tsv"),
         "--operator", "modularity", "--bandwidths", "2..4",
         "--select-attr", "continent=Europe", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    for w in (2, 3, 4):
        assert (out / f"mu_W{w}.tsv").exists()
    combined = (out / "mu_sweep.tsv").read_text().splitlines()
    assert combined[0] == "W\tk\tmu"
    assert len(combined) == 1 + 2 + 3 + 4
    transitions = (out / "transitions.tsv").read_text().splitlines()
    assert len(transitions) == 4


def test_sweep_deterministic_outputs(tmp_path, runner, fixture_graph_dir):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        result = runner.invoke(
            main,
            ["sweep", "--input", str(fixture_graph_dir / "edges.tsv"),
             "--operator", "modularity", "--bandwidths", "2,4", "--seed", "7",
             "--select-attr", "continent=Europe", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        outs.append((out / "mu_sweep.tsv").read_bytes())
    assert outs[0] == outs[1]


def test_embed_with_color_axis(tmp_path, runner, fixture_graph_dir):
    out = tmp_path / "frame"
    result = runner.invoke(
        main,
        ["embed", "--input", str(fixture_graph_dir / "edges.tsv"),
         "--operator", "modularity", "--bandwidth", "3",
         "--axes", "1,2", "--color-axis", "0",
         "--select-attr", "continent=Europe", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    header = (out / "frame.tsv").read_text().splitlines()[0]
    assert header.split("\t") == [
        "id", "label", "x", "y", "color_scalar", "magnitude", "lon", "lat", "hue", "size",
    ]


def test_bad_selection_is_an_error(tmp_path, runner, fixture_graph_dir):
    result = runner.invoke(
        main,
        ["slepian", "--input", str(fixture_graph_dir / "edges.tsv"),
         "--operator", "modularity", "--bandwidth", "2",
         "--select-attr", "continent=Atlantis", "--out", str(tmp_path / "x")],
    )
    assert result.exit_code != 0


def test_bandwidth_spec_parsing():
    from slepnet.cli import _parse_bandwidths

    assert _parse_bandwidths("10,20,40,80") == [10, 20, 40, 80]
    assert _parse_bandwidths("2..6:2") == [2, 4, 6]
    assert _parse_bandwidths("2..4") == [2, 3, 4]
    assert _parse_bandwidths("4,2..3") == [2, 3, 4]
