"""Energy-concentration analysis of a bandlimited basis on a node subset.

Restricting the W-column basis to a selected subgraph gives the W x W
concentration matrix; its eigendecomposition yields Slepian vectors ordered by
decreasing energy concentration, the Shannon number, and the phase-transition
diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .spectral import SpectralBasis, solve_dense_symmetric

# Concentrations below this are reported as exactly 0 so downstream sorting is stable.
CONCENTRATION_FLOOR = 1e-10

# Machine-level ties snap together so tied blocks get a deterministic basis.
CONCENTRATION_TIE_SNAP = 1e-13

# Consecutive drops below this do not count as a phase transition.
TRANSITION_MIN_DROP = 0.05


class SelectionError(ValueError):
    """Subgraph selection is empty, duplicated, or out of range."""


@dataclass(frozen=True)
class SubgraphSelection:
    """Node subset standing in for the diagonal 0/1 selector of size N."""

    indices: np.ndarray
    node_count: int

    def __post_init__(self):
        idx = np.unique(np.asarray(self.indices, dtype=np.int64))
        if idx.size != np.asarray(self.indices).size:
            raise SelectionError("selection indices must be unique")
        if idx.size == 0:
            raise SelectionError("selection must contain at least one node")
        if self.node_count < 1:
            raise SelectionError("selection node_count must be >= 1")
        if idx[0] < 0 or idx[-1] >= self.node_count:
            bad = int(idx[0]) if idx[0] < 0 else int(idx[-1])
            raise SelectionError(f"selection index {bad} out of range [0, {self.node_count})")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def size(self) -> int:
        return int(self.indices.shape[0])

    def mask(self) -> np.ndarray:
        m = np.zeros(self.node_count, dtype=bool)
        m[self.indices] = True
        return m


class TransitionEstimate(NamedTuple):
    index: int
    detected: bool


def shannon_number(bandwidth: int, selection_size: int, node_count: int) -> float:
    """Expected count of well-concentrated Slepian vectors: W * S / N."""
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    return bandwidth * selection_size / node_count


@dataclass(frozen=True)
class SlepianBasis:
    """Slepian vectors with their concentrations and localization diagnostics.

    ``vectors`` columns are orthonormal over the whole graph; restricted to
    the selection they are orthogonal with norms given by ``concentrations``
    (descending, clamped to [0, 1]).  ``shannon_number`` is W * S / N.
    """

    vectors: np.ndarray
    concentrations: np.ndarray
    coefficients: np.ndarray
    shannon_number: float
    transition_index: int
    transition_detected: bool
    source_basis: SpectralBasis
    selection: SubgraphSelection

    @property
    def bandwidth(self) -> int:
        return int(self.vectors.shape[1])

    @property
    def node_count(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def degenerate_cutoff(self) -> bool:
        return self.source_basis.degenerate_cutoff


def _check_selection(basis: SpectralBasis, sel: SubgraphSelection) -> None:
    if sel.node_count != basis.node_count:
        raise SelectionError(
            f"selection is over {sel.node_count} nodes but basis has {basis.node_count}"
        )


def concentration_matrix(basis: SpectralBasis, sel: SubgraphSelection) -> np.ndarray:
    """W x W matrix C with C_ab = sum over selected nodes i of U[i,a] U[i,b].

    Computed by restricting basis rows to the selection, never through an
    N x N product.
    """
    _check_selection(basis, sel)
    rows = basis.vectors[sel.indices, :]
    c = rows.T @ rows
    return (c + c.T) / 2.0


def _align_tied_blocks(mu: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Deterministic basis for groups of exactly equal concentrations.

    Within a tied block the eigenvectors of C are an arbitrary rotation; we
    re-derive the block from projections of its dominant coordinate axes so a
    full selection reproduces the underlying eigenvectors in their original
    order.  The result stays basis-dependent for inexact near-ties.
    """
    v = v.copy()
    start = 0
    w = mu.size
    while start < w:
        stop = start + 1
        while stop < w and mu[stop] == mu[start]:
            stop += 1
        g = stop - start
        if g > 1:
            block = v[:, start:stop]
            proj = block @ block.T
            axes = np.sort(np.argsort(np.diag(proj))[::-1][:g])
            q, r = np.linalg.qr(proj[:, axes])
            flip = np.sign(np.diag(r))
            flip[flip == 0] = 1.0
            q = q * flip
            # Keep the replacement only if it really spans the block.
            if np.max(np.abs(proj @ q - q)) < 1e-8:
                v[:, start:stop] = q
        start = stop
    return v


def compute_slepians(basis: SpectralBasis, sel: SubgraphSelection) -> SlepianBasis:
    """Decompose the concentration matrix into a full Slepian basis.

    Concentrations below 1e-10 are reported as exactly 0; values are clamped
    to [0, 1] (full selections and rank-deficient cases sit on the boundary)
    and machine-level ties are snapped together so tied blocks are handled
    deterministically.  Slepian vectors are sign-fixed the same way as
    spectral basis columns.
    """
    c = concentration_matrix(basis, sel)
    mu, v = solve_dense_symmetric(c)
    mu = np.clip(mu, 0.0, 1.0)
    mu[mu < CONCENTRATION_FLOOR] = 0.0
    gaps = np.abs(np.diff(mu))
    for k in np.flatnonzero(gaps < CONCENTRATION_TIE_SNAP):
        mu[k + 1] = mu[k]
    v = _align_tied_blocks(mu, v)

    s = basis.vectors @ v
    # Sign convention on the node-domain vectors; mirror flips onto the
    # coefficients so s = U v stays exact.
    for k in range(s.shape[1]):
        pivot = int(np.argmax(np.abs(s[:, k])))
        if s[pivot, k] < 0:
            s[:, k] = -s[:, k]
            v[:, k] = -v[:, k]

    w = basis.bandwidth
    shannon = shannon_number(w, sel.size, basis.node_count)
    transition = estimate_transition(mu, shannon_number=shannon) if w >= 2 else TransitionEstimate(1, False)

    for arr in (s, mu, v):
        arr.setflags(write=False)
    return SlepianBasis(
        vectors=s,
        concentrations=mu,
        coefficients=v,
        shannon_number=shannon,
        transition_index=transition.index,
        transition_detected=transition.detected,
        source_basis=basis,
        selection=sel,
    )


def rayleigh_concentration(
    basis: SpectralBasis, sel: SubgraphSelection, coeffs: Sequence[float] | np.ndarray
) -> float:
    """Energy fraction inside the selection for the bandlimited signal U v.

    Equals (v^T C v) / (v^T v); rejects the zero vector.
    """
    _check_selection(basis, sel)
    v = np.asarray(coeffs, dtype=np.float64)
    if v.shape != (basis.bandwidth,):
        raise ValueError(f"coefficients must have shape ({basis.bandwidth},), got {v.shape}")
    total = float(v @ v)
    if total == 0.0:
        raise ValueError("coefficient vector must be nonzero")
    s = basis.vectors @ v
    inside = float(s[sel.indices] @ s[sel.indices])
    return inside / float(s @ s)


def write_slepian_table(path, sl: SlepianBasis, num_vectors: int | None = None,
                        node_labels: Sequence[str] | None = None) -> None:
    """Per-node table (id, label, s1..sm) plus a JSON metadata sidecar.

    The sidecar lands at `<path>.meta.json` and records the mu-sequence,
    Shannon number, transition index, bandwidth, and selection size.
    """
    import json
    from pathlib import Path

    from .edgelist import atomic_write_text

    m = sl.bandwidth if num_vectors is None else int(num_vectors)
    if not 1 <= m <= sl.bandwidth:
        raise ValueError(f"num_vectors must lie in [1, {sl.bandwidth}]")
    header = ["id", "label"] + [f"s{k + 1}" for k in range(m)]
    lines = ["\t".join(header)]
    for i in range(sl.node_count):
        label = node_labels[i] if node_labels else ""
        row = [str(i), label] + [repr(float(v)) for v in sl.vectors[i, :m]]
        lines.append("\t".join(row))
    atomic_write_text(path, "\n".join(lines) + "\n")

    meta = {
        "mu_sequence": [float(v) for v in sl.concentrations],
        "shannon_number": sl.shannon_number,
        "transition_index": sl.transition_index,
        "transition_detected": sl.transition_detected,
        "bandwidth": sl.bandwidth,
        "selection_size": sl.selection.size,
        "degenerate_cutoff": sl.degenerate_cutoff,
    }
    atomic_write_text(Path(str(path) + ".meta.json"), json.dumps(meta, indent=2) + "\n")


def estimate_transition(
    concentrations: Sequence[float] | np.ndarray, shannon_number: float | None = None
) -> TransitionEstimate:
    """Locate the localized/delocalized boundary in a descending mu-sequence.

    Returns the 1-based index k* with the largest consecutive drop
    mu_k - mu_{k+1} (first index wins ties).  When every drop is below 0.05 no
    transition is detected and the estimate falls back to round(shannon_number)
    when given, else to W.
    """
    mu = np.asarray(concentrations, dtype=np.float64)
    if mu.ndim != 1 or mu.size < 2:
        raise ValueError("need a 1-D concentration sequence of length >= 2")
    if np.any(mu[1:] > mu[:-1] + 1e-9):
        raise ValueError("concentration sequence must be sorted descending")

    w = int(mu.size)
    drops = mu[:-1] - mu[1:]
    if float(np.max(drops)) < TRANSITION_MIN_DROP:
        if shannon_number is not None:
            fallback = int(min(w, max(1, round(shannon_number))))
        else:
            fallback = w
        return TransitionEstimate(fallback, False)
    return TransitionEstimate(int(np.argmax(drops)) + 1, True)
