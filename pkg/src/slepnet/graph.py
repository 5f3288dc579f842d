"""Graph storage, implicit symmetric operators, and classical partition metrics.

Graphs are undirected, weighted, and immutable: edges are stored once with
i < j and the adjacency is symmetric by construction.  Operators (combinatorial
Laplacian, symmetric-normalized Laplacian, modularity matrix) are exposed as
matvec closures over the sparse adjacency; no dense N x N matrix is ever
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp


class GraphValidationError(ValueError):
    """Input data violates a structural constraint of the graph model."""


class OperatorKind(str, Enum):
    """Symmetric graph operator selector."""

    LAPLACIAN = "laplacian"
    LAPLACIAN_NORMALIZED = "laplacian-norm"
    MODULARITY = "modularity"


@dataclass(frozen=True)
class Graph:
    """Immutable sparse symmetric weighted graph with optional node metadata.

    Edges are canonicalized to i < j and sorted lexicographically; weights are
    strictly positive.  ``degrees`` holds the weighted degree of every node.
    """

    node_count: int
    edge_i: np.ndarray
    edge_j: np.ndarray
    edge_weight: np.ndarray
    degrees: np.ndarray
    node_labels: tuple[str, ...] | None = None
    node_positions: np.ndarray | None = None
    node_attributes: Mapping[str, tuple[str, ...]] | None = None
    _adjacency: sp.csr_matrix = field(repr=False, compare=False, default=None)

    @property
    def edge_count(self) -> int:
        return int(self.edge_i.shape[0])

    @property
    def total_weight(self) -> float:
        """Sum of all degrees, i.e. 2m = sum_ij A_ij."""
        return float(self.degrees.sum())

    @property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric CSR adjacency (both orientations stored)."""
        return self._adjacency

    def edges(self) -> list[tuple[int, int, float]]:
        """Edge list as (i, j, weight) tuples with i < j."""
        return list(
            zip(self.edge_i.tolist(), self.edge_j.tolist(), self.edge_weight.tolist())
        )

    def attribute_keys(self) -> tuple[str, ...]:
        if self.node_attributes is None:
            return ()
        return tuple(sorted(self.node_attributes))


@dataclass(frozen=True)
class Partition:
    """Two-way node assignment with entries in {+1, -1}."""

    assignment: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int64)
        if a.ndim != 1:
            raise GraphValidationError("partition assignment must be a 1-D vector")
        if not np.all(np.abs(a) == 1):
            bad = int(np.flatnonzero(np.abs(a) != 1)[0])
            raise GraphValidationError(
                f"partition entries must be +1 or -1; entry {bad} is {self.assignment[bad]}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "assignment", a)

    def __len__(self) -> int:
        return int(self.assignment.shape[0])


@dataclass(frozen=True)
class LinearOperator:
    """Implicit symmetric operator: y = apply(x) without a dense matrix.

    ``total_weight`` caches 2m for the Girvan-Newman null model.
    """

    dimension: int
    kind: OperatorKind
    total_weight: float
    apply: Callable[[np.ndarray], np.ndarray]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.apply(x)


def build_graph(
    edge_list: Sequence[tuple[int, int, float]],
    node_count: int,
    node_labels: Sequence[str] | None = None,
    node_positions: np.ndarray | Sequence[Sequence[float]] | None = None,
    node_attributes: Mapping[str, Sequence[str]] | None = None,
) -> Graph:
    """Validate an edge list and assemble an immutable :class:`Graph`.

    Duplicate (i, j) pairs (in either orientation) have their weights summed.
    Self-loops, out-of-range indices and non-positive weights are rejected
    with the offending edge identified.
    """
    if node_count < 1:
        raise GraphValidationError(f"node_count must be >= 1, got {node_count}")

    if len(edge_list) == 0:
        ei = np.zeros(0, dtype=np.int64)
        ej = np.zeros(0, dtype=np.int64)
        ew = np.zeros(0, dtype=np.float64)
    else:
        arr = np.asarray(edge_list, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise GraphValidationError("edge_list entries must be (i, j, weight) triples")
        ii = arr[:, 0].astype(np.int64)
        jj = arr[:, 1].astype(np.int64)
        ww = arr[:, 2]
        if not np.array_equal(ii, arr[:, 0]) or not np.array_equal(jj, arr[:, 1]):
            raise GraphValidationError("edge endpoints must be integers")

        bad = np.flatnonzero(ii == jj)
        if bad.size:
            k = int(bad[0])
            raise GraphValidationError(f"self-loop rejected: edge ({ii[k]}, {jj[k]})")
        bad = np.flatnonzero((ii < 0) | (ii >= node_count) | (jj < 0) | (jj >= node_count))
        if bad.size:
            k = int(bad[0])
            raise GraphValidationError(
                f"edge ({ii[k]}, {jj[k]}) out of range for node_count={node_count}"
            )
        bad = np.flatnonzero(~np.isfinite(ww) | (ww <= 0))
        if bad.size:
            k = int(bad[0])
            raise GraphValidationError(
                f"edge ({ii[k]}, {jj[k]}) has non-positive weight {ww[k]}"
            )

        lo = np.minimum(ii, jj)
        hi = np.maximum(ii, jj)
        keys = lo * np.int64(node_count) + hi
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        ws = ww[order]
        uniq, start = np.unique(keys, return_index=True)
        ew = np.add.reduceat(ws, start)
        ei = (uniq // node_count).astype(np.int64)
        ej = (uniq % node_count).astype(np.int64)

    degrees = np.zeros(node_count, dtype=np.float64)
    np.add.at(degrees, ei, ew)
    np.add.at(degrees, ej, ew)

    labels = None
    if node_labels is not None:
        if len(node_labels) != node_count:
            raise GraphValidationError("node_labels length must equal node_count")
        labels = tuple(str(s) for s in node_labels)

    positions = None
    if node_positions is not None:
        positions = np.asarray(node_positions, dtype=np.float64)
        if positions.shape[0] != node_count or positions.ndim != 2 or positions.shape[1] not in (2, 3):
            raise GraphValidationError("node_positions must be (node_count, 2) or (node_count, 3)")
        positions.setflags(write=False)

    attributes = None
    if node_attributes is not None:
        attributes = {}
        for key, col in node_attributes.items():
            if len(col) != node_count:
                raise GraphValidationError(f"attribute column {key!r} length must equal node_count")
            attributes[str(key)] = tuple(str(v) for v in col)

    adj = sp.csr_matrix(
        (np.concatenate([ew, ew]), (np.concatenate([ei, ej]), np.concatenate([ej, ei]))),
        shape=(node_count, node_count),
    )
    for a in (ei, ej, ew, degrees):
        a.setflags(write=False)
    return Graph(
        node_count=node_count,
        edge_i=ei,
        edge_j=ej,
        edge_weight=ew,
        degrees=degrees,
        node_labels=labels,
        node_positions=positions,
        node_attributes=attributes,
        _adjacency=adj,
    )


def make_operator(g: Graph, kind: OperatorKind) -> LinearOperator:
    """Build the implicit operator L, D^{-1/2}(D-A)D^{-1/2}, or B = A - P.

    The modularity null model is Girvan-Newman: P_ij = d_i d_j / (2m), applied
    as a rank-one correction B x = A x - d (d.x)/(2m).
    """
    kind = OperatorKind(kind)
    n = g.node_count
    A = g.adjacency
    d = g.degrees
    two_m = g.total_weight

    if kind is OperatorKind.LAPLACIAN_NORMALIZED:
        zero = np.flatnonzero(d == 0)
        if zero.size:
            raise GraphValidationError(
                f"normalized Laplacian requires positive degrees; node {int(zero[0])} has degree 0"
            )
        inv_sqrt_d = 1.0 / np.sqrt(d)

        def apply_norm(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=np.float64)
            return x - inv_sqrt_d * (A @ (inv_sqrt_d * x))

        return LinearOperator(dimension=n, kind=kind, total_weight=two_m, apply=apply_norm)

    if kind is OperatorKind.MODULARITY:
        if two_m <= 0:
            raise GraphValidationError("modularity operator requires total weight > 0")

        def apply_mod(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=np.float64)
            return A @ x - d * (d @ x) / two_m

        return LinearOperator(dimension=n, kind=kind, total_weight=two_m, apply=apply_mod)

    def apply_comb(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return d * x - A @ x

    return LinearOperator(dimension=n, kind=kind, total_weight=two_m, apply=apply_comb)


def _as_assignment(g: Graph, p: Partition | Sequence[int]) -> np.ndarray:
    if not isinstance(p, Partition):
        p = Partition(np.asarray(p))
    if len(p) != g.node_count:
        raise GraphValidationError(
            f"partition length {len(p)} does not match node count {g.node_count}"
        )
    return p.assignment.astype(np.float64)


def cut_size(g: Graph, p: Partition | Sequence[int]) -> float:
    """Total weight of edges crossing the two-way partition.

    Equals (1/4) sum_ij A_ij (1 - g_i g_j) over ordered pairs, with each
    undirected crossing edge counted once in the result.
    """
    gv = _as_assignment(g, p)
    return float(0.5 * np.dot(g.edge_weight, 1.0 - gv[g.edge_i] * gv[g.edge_j]))


def modularity_score(g: Graph, p: Partition | Sequence[int]) -> float:
    """Q = g^T B g for the +/-1 assignment, via the implicit modularity operator."""
    gv = _as_assignment(g, p)
    op = make_operator(g, OperatorKind.MODULARITY)
    return float(gv @ op.apply(gv))
