"""Canonical text interchange formats: edge lists and node-metadata tables.

Edge lists are one `i j weight` triple per line, whitespace-separated,
0-based, with `#` comment lines ignored.  The writer adds a `# nodes: N`
comment so graphs with trailing isolated nodes round-trip exactly.  Node
metadata travels in a TSV sidecar (id, label, position columns, attribute
columns).
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .graph import Graph, GraphValidationError, build_graph


def atomic_write_text(path: str | Path, content: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_edge_list(path: str | Path, g: Graph) -> None:
    lines = [f"# nodes: {g.node_count}"]
    for i, j, w in zip(g.edge_i, g.edge_j, g.edge_weight):
        lines.append(f"{i} {j} {float(w)!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_edge_list(path: str | Path) -> tuple[list[tuple[int, int, float]], int]:
    """Parse an edge-list file; returns (edges, node_count).

    Without a `# nodes:` hint the node count is the largest index plus one.
    """
    edges: list[tuple[int, int, float]] = []
    declared = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.lower().startswith("nodes:"):
                    declared = int(body.split(":", 1)[1])
                continue
            parts = line.split()
            if len(parts) != 3:
                raise GraphValidationError(
                    f"{path}:{lineno}: expected 'i j weight', got {line!r}"
                )
            try:
                i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise GraphValidationError(f"{path}:{lineno}: {exc}") from exc
            edges.append((i, j, w))
    if declared is not None:
        n = declared
    elif edges:
        n = max(max(i, j) for i, j, _ in edges) + 1
    else:
        raise GraphValidationError(f"{path}: no edges and no '# nodes:' declaration")
    return edges, n


def _position_header(dim: int) -> list[str]:
    return ["lon", "lat"] if dim == 2 else ["x", "y", "z"]


def write_node_table(path: str | Path, g: Graph) -> None:
    """TSV sidecar: id, label, position columns, then attribute columns."""
    cols = ["id", "label"]
    dim = 0
    if g.node_positions is not None:
        dim = g.node_positions.shape[1]
        cols += _position_header(dim)
    attr_keys = list(g.attribute_keys())
    cols += attr_keys

    lines = ["\t".join(cols)]
    for i in range(g.node_count):
        row = [str(i), g.node_labels[i] if g.node_labels else ""]
        if dim:
            row += [repr(float(v)) for v in g.node_positions[i]]
        for key in attr_keys:
            row.append(g.node_attributes[key][i])
        lines.append("\t".join(row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_node_table(path: str | Path) -> dict:
    """Parse a node sidecar back into build_graph metadata kwargs."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split("\t")
        rows = [line.rstrip("\n").split("\t") for line in fh if line.strip()]
    if header[:2] != ["id", "label"]:
        raise GraphValidationError(f"{path}: sidecar must start with id, label columns")
    pos_cols = [c for c in ("lon", "lat", "x", "y", "z") if c in header]
    attr_cols = [c for c in header[2:] if c not in pos_cols]

    rows.sort(key=lambda r: int(r[0]))
    labels = [r[header.index("label")] for r in rows]
    positions = None
    if pos_cols:
        idx = [header.index(c) for c in pos_cols]
        positions = np.array([[float(r[k]) for k in idx] for r in rows])
    attributes = None
    if attr_cols:
        attributes = {c: [r[header.index(c)] for r in rows] for c in attr_cols}
    out = {"node_labels": labels if any(labels) else None, "node_positions": positions,
           "node_attributes": attributes}
    return out


def load_graph(edge_path: str | Path, node_path: str | Path | None = None) -> Graph:
    """Read an edge list plus optional node sidecar into a Graph."""
    edges, n = read_edge_list(edge_path)
    meta = {}
    if node_path is not None and Path(node_path).exists():
        meta = read_node_table(node_path)
    return build_graph(edges, n, **meta)
