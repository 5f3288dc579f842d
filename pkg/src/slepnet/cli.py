"""Batch front door: build graphs, compute bases and Slepians, export tables.

Subcommands: generate, ingest, spectrum, slepian, sweep, embed, serve.  All
tables are tab-separated text with a header row; edge lists use the canonical
`i j weight` format.  Outputs are written atomically.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import click
import numpy as np

from .datasets import (
    SwissRollConfig,
    generate_swiss_roll,
    ingest_routes,
    select_by_attribute,
)
from .edgelist import atomic_write_text, load_graph, write_edge_list, write_node_table
from .embedding import BasisKind, embed, write_frame
from .graph import Graph, OperatorKind, make_operator
from .slepian import SubgraphSelection, compute_slepians, write_slepian_table
from .spectral import SolverConfig, SpectralBasis, load_basis, save_basis, solve_extreme

OPERATOR_CHOICE = click.Choice([k.value for k in OperatorKind])


def _out_dir(out: str) -> Path:
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load_input(edges: str, nodes: str | None) -> Graph:
    edge_path = Path(edges)
    node_path = Path(nodes) if nodes else edge_path.with_name("nodes.tsv")
    return load_graph(edge_path, node_path)


def _parse_axes(axes: str) -> tuple[int, int]:
    parts = axes.split(",")
    if len(parts) != 2:
        raise click.BadParameter(f"expected 'a,b', got {axes!r}")
    return int(parts[0]), int(parts[1])


def _parse_bandwidths(spec: str) -> list[int]:
    """Comma list and/or 'a..b' and 'a..b:step' ranges, e.g. '2,4,8..16:4'."""
    values: list[int] = []
    for token in spec.split(","):
        token = token.strip()
        if ".." in token:
            bounds, _, step = token.partition(":")
            lo, hi = bounds.split("..")
            values.extend(range(int(lo), int(hi) + 1, int(step) if step else 1))
        else:
            values.append(int(token))
    if not values:
        raise click.BadParameter("no bandwidths given")
    return sorted(set(values))


def _resolve_selection(
    g: Graph, select_attr: str | None, select_nodes: str | None, select_file: str | None
) -> SubgraphSelection | None:
    """None means the full node set (raw eigenvector view)."""
    given = [x for x in (select_attr, select_nodes, select_file) if x]
    if len(given) > 1:
        raise click.UsageError("give at most one of --select-attr / --select-nodes / --select-file")
    if select_attr:
        if "=" not in select_attr:
            raise click.BadParameter("--select-attr expects key=value")
        key, _, value = select_attr.partition("=")
        return select_by_attribute(g, key.strip(), value.strip())
    if select_nodes:
        if select_nodes.strip().lower() == "all":
            return None
        ids = [int(tok) for tok in select_nodes.split(",") if tok.strip()]
        return SubgraphSelection(np.array(ids), g.node_count)
    if select_file:
        ids = []
        for line in Path(select_file).read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                ids.append(int(line))
        return SubgraphSelection(np.array(ids), g.node_count)
    return None


def _basis_for(
    g: Graph,
    operator: str,
    bandwidth: int,
    seed: int,
    tol: float,
    basis_path: str | None,
) -> SpectralBasis:
    if basis_path:
        basis = load_basis(basis_path)
        if basis.operator_kind != OperatorKind(operator):
            raise click.UsageError(
                f"basis file holds {basis.operator_kind.value}, requested {operator}"
            )
        if basis.bandwidth < bandwidth:
            raise click.UsageError(
                f"basis file holds W={basis.bandwidth} < requested {bandwidth}"
            )
        return basis.truncate(bandwidth)
    op = make_operator(g, OperatorKind(operator))
    return solve_extreme(op, SolverConfig(bandwidth=bandwidth, seed=seed, tolerance=tol))


def _write_mu_table(path: Path, sl) -> None:
    lines = ["k\tmu"]
    for k, mu in enumerate(sl.concentrations, start=1):
        lines.append(f"{k}\t{float(mu)!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def _write_selection(path: Path, sel: SubgraphSelection) -> None:
    lines = [f"# selected nodes: {sel.size}"] + [str(i) for i in sel.indices]
    atomic_write_text(path, "\n".join(lines) + "\n")


@click.group()
def main():
    """Graph Slepian analysis toolbox."""


@main.command()
@click.argument("dataset", type=click.Choice(["swiss-roll"]))
@click.option("--nodes", type=int, default=4400, show_default=True)
@click.option("--kernel-scale", type=float, default=0.005, show_default=True)
@click.option("--weight-threshold", type=float, default=0.01, show_default=True)
@click.option("--radius", type=float, default=0.8, show_default=True, help="Selection ball radius.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", required=True, help="Output directory.")
def generate(dataset, nodes, kernel_scale, weight_threshold, radius, seed, out):
    """Generate a benchmark graph plus its subgraph selection."""
    cfg = SwissRollConfig(
        node_count=nodes,
        kernel_scale=kernel_scale,
        weight_threshold=weight_threshold,
        seed=seed,
        subgraph_radius=radius,
    )
    g, sel = generate_swiss_roll(cfg)
    path = _out_dir(out)
    write_edge_list(path / "edges.tsv", g)
    write_node_table(path / "nodes.tsv", g)
    _write_selection(path / "selection.txt", sel)
    click.echo(f"swiss-roll: N={g.node_count} edges={g.edge_count} selection={sel.size}")


@main.command()
@click.option("--airports", required=True, type=click.Path(exists=True))
@click.option("--routes", required=True, type=click.Path(exists=True))
@click.option("--out", required=True)
def ingest(airports, routes, out):
    """Ingest OpenFlights airport/route tables into the canonical formats."""
    result = ingest_routes(airports, routes)
    g, report = result.graph, result.report
    path = _out_dir(out)
    write_edge_list(path / "edges.tsv", g)
    write_node_table(path / "nodes.tsv", g)
    click.echo(
        f"airports: N={g.node_count} (dropped {report.airports_dropped} without routes), "
        f"routes accepted={report.accepted_routes} "
        f"unknown={report.skipped_unknown_airport} self-loops={report.skipped_self_loops}, "
        f"stored edges={g.edge_count}"
    )


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True), help="Edge list.")
@click.option("--nodes", type=click.Path(), default=None, help="Node sidecar (default: nodes.tsv next to input).")
@click.option("--operator", type=OPERATOR_CHOICE, default=OperatorKind.LAPLACIAN.value, show_default=True)
@click.option("--bandwidth", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--out", required=True)
def spectrum(input_, nodes, operator, bandwidth, seed, tol, out):
    """Compute and store the W extreme eigenpairs of a graph operator."""
    g = _load_input(input_, nodes)
    t0 = time.perf_counter()
    basis = _basis_for(g, operator, bandwidth, seed, tol, None)
    elapsed = time.perf_counter() - t0
    path = _out_dir(out)
    save_basis(basis, path / "basis.npz")
    lines = ["k\tvalue\tresidual"]
    for k in range(basis.bandwidth):
        lines.append(f"{k + 1}\t{float(basis.values[k])!r}\t{float(basis.residual_norms[k])!r}")
    atomic_write_text(path / "eigenvalues.tsv", "\n".join(lines) + "\n")
    click.echo(
        f"{operator}: W={basis.bandwidth} solved in {elapsed:.2f}s, "
        f"worst residual {float(basis.residual_norms.max()):.2e}"
    )


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--nodes", type=click.Path(), default=None)
@click.option("--operator", type=OPERATOR_CHOICE, default=OperatorKind.MODULARITY.value, show_default=True)
@click.option("--bandwidth", type=int, required=True)
@click.option("--select-attr", default=None, help="key=value attribute selection.")
@click.option("--select-nodes", default=None, help="Comma-separated node ids, or 'all'.")
@click.option("--select-file", type=click.Path(exists=True), default=None)
@click.option("--axes", default="0,1", show_default=True)
@click.option("--vectors", type=int, default=None, help="Slepian columns to export (default: all).")
@click.option("--basis", "basis_path", type=click.Path(exists=True), default=None, help="Reuse a saved basis.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--out", required=True)
def slepian(input_, nodes, operator, bandwidth, select_attr, select_nodes, select_file,
            axes, vectors, basis_path, seed, tol, out):
    """Compute the Slepian basis for a selection and export tables."""
    g = _load_input(input_, nodes)
    sel = _resolve_selection(g, select_attr, select_nodes, select_file)
    if sel is None:
        sel = SubgraphSelection(np.arange(g.node_count), g.node_count)
    basis = _basis_for(g, operator, bandwidth, seed, tol, basis_path)
    sl = compute_slepians(basis, sel)
    a, b = _parse_axes(axes)
    frame = embed(sl.vectors, axes=(a, b), basis_kind=BasisKind.SLEPIAN)

    path = _out_dir(out)
    write_slepian_table(path / "slepians.tsv", sl, num_vectors=vectors, node_labels=g.node_labels)
    _write_mu_table(path / "mu.tsv", sl)
    write_frame(path / "frame.tsv", frame, g)
    click.echo(
        f"K={sl.shannon_number:.4f} transition={sl.transition_index} "
        f"(detected={sl.transition_detected}) S={sel.size} W={basis.bandwidth}"
    )


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--nodes", type=click.Path(), default=None)
@click.option("--operator", type=OPERATOR_CHOICE, default=OperatorKind.MODULARITY.value, show_default=True)
@click.option("--bandwidths", required=True, help="e.g. '10,20,40,80' or '2..130'.")
@click.option("--select-attr", default=None)
@click.option("--select-nodes", default=None)
@click.option("--select-file", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--out", required=True)
def sweep(input_, nodes, operator, bandwidths, select_attr, select_nodes, select_file, seed, tol, out):
    """Mu-spectrum over a bandwidth sweep, reusing one basis at the largest W."""
    g = _load_input(input_, nodes)
    sel = _resolve_selection(g, select_attr, select_nodes, select_file)
    if sel is None:
        sel = SubgraphSelection(np.arange(g.node_count), g.node_count)
    ws = _parse_bandwidths(bandwidths)
    basis = _basis_for(g, operator, max(ws), seed, tol, None)

    path = _out_dir(out)
    combined = ["W\tk\tmu"]
    transitions = ["W\tshannon_number\ttransition_index\tdetected"]
    for w in ws:
        sl = compute_slepians(basis.truncate(w), sel)
        _write_mu_table(path / f"mu_W{w}.tsv", sl)
        for k, mu in enumerate(sl.concentrations, start=1):
            combined.append(f"{w}\t{k}\t{float(mu)!r}")
        transitions.append(
            f"{w}\t{sl.shannon_number!r}\t{sl.transition_index}\t{sl.transition_detected}"
        )
        click.echo(
            f"W={w}: K={sl.shannon_number:.4f} transition={sl.transition_index} "
            f"(detected={sl.transition_detected})"
        )
    atomic_write_text(path / "mu_sweep.tsv", "\n".join(combined) + "\n")
    atomic_write_text(path / "transitions.tsv", "\n".join(transitions) + "\n")


@main.command(name="embed")
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--nodes", type=click.Path(), default=None)
@click.option("--operator", type=OPERATOR_CHOICE, default=OperatorKind.MODULARITY.value, show_default=True)
@click.option("--bandwidth", type=int, required=True)
@click.option("--axes", default="0,1", show_default=True)
@click.option("--color-axis", type=int, default=None)
@click.option("--select-attr", default=None)
@click.option("--select-nodes", default=None)
@click.option("--select-file", type=click.Path(exists=True), default=None)
@click.option("--basis", "basis_path", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--out", required=True)
def embed_cmd(input_, nodes, operator, bandwidth, axes, color_axis, select_attr,
              select_nodes, select_file, basis_path, seed, tol, out):
    """Export a 2-D frame: raw eigenvectors, or Slepians when a selection is given."""
    g = _load_input(input_, nodes)
    sel = _resolve_selection(g, select_attr, select_nodes, select_file)
    basis = _basis_for(g, operator, bandwidth, seed, tol, basis_path)
    a, b = _parse_axes(axes)
    if sel is None:
        frame = embed(basis.vectors, axes=(a, b), color_axis=color_axis,
                      basis_kind=BasisKind.RAW_EIGENVECTORS)
    else:
        sl = compute_slepians(basis, sel)
        frame = embed(sl.vectors, axes=(a, b), color_axis=color_axis,
                      basis_kind=BasisKind.SLEPIAN)
    path = _out_dir(out)
    write_frame(path / "frame.tsv", frame, g)
    click.echo(f"frame: axes=({a},{b}) kind={frame.basis_kind.value} N={frame.node_count}")


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True),
              envvar="SLEPNET_GRAPH")
@click.option("--nodes", type=click.Path(), default=None, envvar="SLEPNET_NODES")
@click.option("--host", default="127.0.0.1", show_default=True, envvar="SLEPNET_HOST")
@click.option("--port", type=int, default=8000, show_default=True, envvar="SLEPNET_PORT")
@click.option("--operator", type=OPERATOR_CHOICE, default=OperatorKind.MODULARITY.value,
              show_default=True, envvar="SLEPNET_OPERATOR")
@click.option("--wmax", type=int, default=100, show_default=True, envvar="SLEPNET_WMAX")
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--precompute/--no-precompute", default=True, show_default=True)
@click.option("--ui-dir", type=click.Path(), default=None, envvar="SLEPNET_UI_DIR",
              help="Static directory with the explorer UI bundle.")
def serve(graph_path, nodes, host, port, operator, wmax, tol, seed, precompute, ui_dir):
    """Start the interactive compute service."""
    import uvicorn

    from .service import ServiceConfig, SlepianService, create_app

    g = _load_input(graph_path, nodes)
    config = ServiceConfig(
        default_operator=OperatorKind(operator),
        w_max=wmax,
        tolerance=tol,
        seed=seed,
        precompute=precompute,
    )
    service = SlepianService(g, config)
    app = create_app(service, ui_dir=ui_dir)
    click.echo(f"serving N={g.node_count} on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
