"""Swiss-roll benchmark graph: a rolled 2-D ribbon with a Gaussian edge kernel.

Nodes are sampled uniformly in the unit square and rolled into 3-D with the
standard parametrization t = (3*pi/2)(1 + 2a), position (t cos t, 21 b, t sin t).
Positions are then rescaled by 1 / (4*pi * sqrt(4400 / N)): this keeps the node
density constant as N varies, so the default kernel constants produce the same
local connectivity at any size, and at N = 4400 the default selection radius
0.8 captures about 762 nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..graph import Graph, build_graph
from ..slepian import SubgraphSelection

_REFERENCE_NODES = 4400
_BASE_SCALE = 4.0 * np.pi


class DatasetError(ValueError):
    """Dataset generation or ingestion failed."""


@dataclass(frozen=True)
class SwissRollConfig:
    node_count: int = 4400
    kernel_scale: float = 0.005
    weight_threshold: float = 0.01
    seed: int = 0
    subgraph_radius: float = 0.8

    def __post_init__(self):
        if self.node_count < 10:
            raise DatasetError("node_count must be >= 10")
        if self.kernel_scale <= 0 or self.subgraph_radius <= 0:
            raise DatasetError("kernel_scale and subgraph_radius must be positive")
        if not 0 < self.weight_threshold < 1:
            raise DatasetError("weight_threshold must lie in (0, 1)")


def roll_positions(node_count: int, seed: int) -> np.ndarray:
    """Density-normalized 3-D positions of the rolled ribbon."""
    rng = np.random.default_rng(seed)
    a = rng.random(node_count)
    b = rng.random(node_count)
    t = 1.5 * np.pi * (1.0 + 2.0 * a)
    raw = np.stack([t * np.cos(t), 21.0 * b, t * np.sin(t)], axis=1)
    return raw / (_BASE_SCALE * np.sqrt(_REFERENCE_NODES / node_count))


def generate_swiss_roll(cfg: SwissRollConfig) -> tuple[Graph, SubgraphSelection]:
    """Build the kernel graph and the ball-shaped subgraph selection.

    Edge weights are exp(-d^2 / kernel_scale); weights below the threshold are
    dropped.  The selection seed node has the minimum first coordinate among
    nodes in the middle third of the roll height; the selection is every node
    within `subgraph_radius` of it.
    """
    n = cfg.node_count
    pos = roll_positions(n, cfg.seed)

    # Threshold in squared-distance space: w >= thr  <=>  d^2 <= -scale ln thr.
    d2_max = -cfg.kernel_scale * np.log(cfg.weight_threshold)
    edges_i: list[np.ndarray] = []
    edges_j: list[np.ndarray] = []
    edges_w: list[np.ndarray] = []
    block = 1024
    for start in range(0, n, block):
        stop = min(start + block, n)
        diff = pos[start:stop, None, :] - pos[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        rows, cols = np.nonzero(d2 <= d2_max)
        keep = cols > rows + start
        rows, cols = rows[keep], cols[keep]
        edges_i.append(rows + start)
        edges_j.append(cols)
        edges_w.append(np.exp(-d2[rows, cols] / cfg.kernel_scale))

    ei = np.concatenate(edges_i)
    ej = np.concatenate(edges_j)
    ew = np.concatenate(edges_w)
    graph = build_graph(
        np.stack([ei, ej, ew], axis=1), n, node_positions=pos
    )

    height = pos[:, 1]
    lo, hi = height.min(), height.max()
    third = (hi - lo) / 3.0
    middle = np.flatnonzero((height >= lo + third) & (height <= hi - third))
    if middle.size == 0:
        middle = np.arange(n)
    seed_node = int(middle[np.argmin(pos[middle, 0])])

    dist = np.linalg.norm(pos - pos[seed_node], axis=1)
    selected = np.flatnonzero(dist <= cfg.subgraph_radius)
    if selected.size == 0:
        raise DatasetError("subgraph selection is empty; increase subgraph_radius")
    return graph, SubgraphSelection(selected, n)
