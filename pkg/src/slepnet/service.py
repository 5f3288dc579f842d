"""Long-running compute service behind the explorer UI.

The service loads one graph, caches eigenbases per (operator, bandwidth) key,
and answers Slepian queries by slicing the smallest cached basis that covers
the requested bandwidth.  Cache entries are immutable; computation of a cold
basis is single-flight per key, so concurrent identical requests share one
solve and responses are independent of cache warmth.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel

from .embedding import BasisKind, embed, frame_styling
from .graph import Graph, OperatorKind, make_operator
from .slepian import SelectionError, SubgraphSelection, compute_slepians
from .spectral import SolverConfig, SpectralBasis, solve_extreme
from .datasets import select_by_attribute


@dataclass(frozen=True)
class ServiceConfig:
    default_operator: OperatorKind = OperatorKind.MODULARITY
    w_max: int = 100
    tolerance: float = 1e-10
    seed: int = 0
    precompute: bool = True


@dataclass
class _RequestLogEntry:
    operator: str
    bandwidth: int
    selection_size: int
    total_seconds: float


class SlepianService:
    """Session state: one immutable graph plus an eigenbasis cache."""

    def __init__(self, graph: Graph | None, config: ServiceConfig | None = None):
        self._graph = graph
        self._config = config or ServiceConfig()
        self._cache: dict[tuple[OperatorKind, int], SpectralBasis] = {}
        self._cache_lock = threading.Lock()
        self._key_locks: dict[tuple[OperatorKind, int], threading.Lock] = {}
        self._log: list[_RequestLogEntry] = []
        self._log_lock = threading.Lock()
        if graph is not None and self._config.precompute:
            w = min(self._config.w_max, max(1, graph.node_count - 1))
            self.basis(self._config.default_operator, w)

    @property
    def config(self) -> ServiceConfig:
        return self._config

    def graph(self) -> Graph:
        if self._graph is None:
            raise HTTPException(status_code=503, detail="no graph loaded")
        return self._graph

    def _solve_key(self, kind: OperatorKind, w: int) -> tuple[OperatorKind, int]:
        """Bandwidth actually solved for a request: at least the configured W max."""
        g = self.graph()
        target = min(max(w, self._config.w_max), max(1, g.node_count - 1))
        target = max(target, w)
        return (kind, target)

    def basis(self, kind: OperatorKind, w: int) -> tuple[SpectralBasis, bool]:
        """Basis with bandwidth w, sliced from the smallest covering cache entry.

        Returns (basis, was_cached).
        """
        kind = OperatorKind(kind)
        with self._cache_lock:
            covering = [m for (k, m) in self._cache if k == kind and m >= w]
            if covering:
                return self._cache[(kind, min(covering))].truncate(w), True
            key = self._solve_key(kind, w)
            lock = self._key_locks.setdefault(key, threading.Lock())
        with lock:
            with self._cache_lock:
                if key in self._cache:
                    return self._cache[key].truncate(w), True
            g = self.graph()
            op = make_operator(g, kind)
            cfg = SolverConfig(
                bandwidth=key[1], seed=self._config.seed, tolerance=self._config.tolerance
            )
            basis = solve_extreme(op, cfg)
            with self._cache_lock:
                self._cache[key] = basis
            return basis.truncate(w), False

    def resolve_selection(self, spec: "SelectionSpec") -> SubgraphSelection:
        g = self.graph()
        if spec.mode == "attribute":
            if not spec.key or spec.value is None:
                raise HTTPException(status_code=400, detail="attribute selection needs key and value")
            try:
                return select_by_attribute(g, spec.key, spec.value)
            except SelectionError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
        if not spec.ids:
            raise HTTPException(status_code=400, detail="id selection needs a nonempty id list")
        ids = np.asarray(spec.ids, dtype=np.int64)
        unknown = sorted(int(i) for i in ids[(ids < 0) | (ids >= g.node_count)])
        if unknown:
            raise HTTPException(
                status_code=400,
                detail={"message": "unknown node ids", "unknown_ids": unknown},
            )
        try:
            return SubgraphSelection(ids, g.node_count)
        except SelectionError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    def _check_bandwidth(self, w: int) -> None:
        n = self.graph().node_count
        if not 1 <= w < n:
            raise HTTPException(
                status_code=400, detail=f"bandwidth W must satisfy 1 <= W < N={n}, got {w}"
            )

    def query(self, spec: "QueryRequest") -> dict:
        t_start = time.perf_counter()
        g = self.graph()
        self._check_bandwidth(spec.W)
        kind = OperatorKind(spec.operator) if spec.operator else self._config.default_operator
        sel = self.resolve_selection(spec.selection)
        axes = (int(spec.axes[0]), int(spec.axes[1]))

        t0 = time.perf_counter()
        basis, cached = self.basis(kind, spec.W)
        t_basis = time.perf_counter() - t0

        t0 = time.perf_counter()
        sl = compute_slepians(basis, sel)
        try:
            frame = embed(
                sl.vectors,
                axes=axes,
                color_axis=spec.color_axis,
                basis_kind=BasisKind.SLEPIAN,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        hue, size = frame_styling(frame)
        t_slepian = time.perf_counter() - t0

        mask = sel.mask()
        has_lonlat = g.node_positions is not None and g.node_positions.shape[1] == 2
        total = time.perf_counter() - t_start
        with self._log_lock:
            self._log.append(
                _RequestLogEntry(kind.value, spec.W, sel.size, total)
            )
            del self._log[:-100]

        return {
            "frame": {
                "id": list(range(g.node_count)),
                "label": list(g.node_labels) if g.node_labels else [""] * g.node_count,
                "x": frame.coords[:, 0].tolist(),
                "y": frame.coords[:, 1].tolist(),
                "magnitude": frame.magnitude.tolist(),
                "angle": frame.angles.tolist(),
                "color_scalar": frame.color_scalar.tolist(),
                "hue": hue.tolist(),
                "size": size.tolist(),
                "lon": g.node_positions[:, 0].tolist() if has_lonlat else None,
                "lat": g.node_positions[:, 1].tolist() if has_lonlat else None,
                "in_selection": mask.tolist(),
                "degree": g.degrees.tolist(),
            },
            "mu_sequence": sl.concentrations.tolist(),
            "K": sl.shannon_number,
            "transition_index": sl.transition_index,
            "transition_detected": sl.transition_detected,
            "degenerate_cutoff": sl.degenerate_cutoff,
            "W": spec.W,
            "operator": kind.value,
            "axes": list(axes),
            "selection_size": sel.size,
            "timing": {
                "basis_seconds": t_basis,
                "slepian_seconds": t_slepian,
                "total_seconds": total,
                "basis_cached": cached,
            },
        }

    def summary(self) -> dict:
        g = self.graph()
        available = [OperatorKind.LAPLACIAN.value, OperatorKind.MODULARITY.value]
        if np.all(g.degrees > 0):
            available.insert(1, OperatorKind.LAPLACIAN_NORMALIZED.value)
        return {
            "N": g.node_count,
            "edge_count": g.edge_count,
            "attribute_keys": list(g.attribute_keys()),
            "degree_extremes": {
                "min": float(g.degrees.min()),
                "max": float(g.degrees.max()),
            },
            "available_operators": available,
            "default_operator": self._config.default_operator.value,
            "w_max": self._config.w_max,
        }

    def nodes(self) -> list[dict]:
        g = self.graph()
        has_lonlat = g.node_positions is not None and g.node_positions.shape[1] == 2
        out = []
        for i in range(g.node_count):
            out.append(
                {
                    "id": i,
                    "label": g.node_labels[i] if g.node_labels else "",
                    "lon": float(g.node_positions[i, 0]) if has_lonlat else None,
                    "lat": float(g.node_positions[i, 1]) if has_lonlat else None,
                    "attributes": {
                        k: g.node_attributes[k][i] for k in g.attribute_keys()
                    }
                    if g.node_attributes
                    else {},
                    "degree": float(g.degrees[i]),
                }
            )
        return out

    def spectrum(self, kind: OperatorKind, w: int, selection: str | None = None) -> dict:
        g = self.graph()
        self._check_bandwidth(w)
        basis, cached = self.basis(OperatorKind(kind), w)
        out = {
            "operator": OperatorKind(kind).value,
            "W": w,
            "eigenvalues": basis.values.tolist(),
            "residual_norms": basis.residual_norms.tolist(),
            "basis_cached": cached,
        }
        if selection:
            if "=" not in selection:
                raise HTTPException(status_code=400, detail="selection must be key=value")
            key, _, value = selection.partition("=")
            try:
                sel = select_by_attribute(g, key, value)
            except SelectionError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            sl = compute_slepians(basis, sel)
            out.update(
                {
                    "mu_sequence": sl.concentrations.tolist(),
                    "K": sl.shannon_number,
                    "transition_index": sl.transition_index,
                    "transition_detected": sl.transition_detected,
                    "selection_size": sel.size,
                }
            )
        return out


class SelectionSpec(BaseModel):
    mode: Literal["attribute", "ids"]
    key: str | None = None
    value: str | None = None
    ids: list[int] | None = None


class QueryRequest(BaseModel):
    selection: SelectionSpec
    W: int
    operator: str | None = None
    axes: tuple[int, int] = (0, 1)
    color_axis: int | None = None


def create_app(service: SlepianService, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="slepnet service", version="0.1.0")

    @app.get("/graph/summary")
    def graph_summary():
        return service.summary()

    @app.get("/graph/nodes")
    def graph_nodes():
        return {"nodes": service.nodes()}

    @app.post("/slepian/query")
    def slepian_query(request: QueryRequest):
        return service.query(request)

    @app.get("/spectrum")
    def spectrum(
        operator: str = Query(...),
        W: int = Query(...),
        selection: str | None = Query(default=None),
    ):
        try:
            kind = OperatorKind(operator)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=f"unknown operator {operator!r}") from exc
        return service.spectrum(kind, W, selection)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
