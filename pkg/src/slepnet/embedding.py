"""2-D embeddings from eigenvector or Slepian coordinates, plus map styling.

A frame takes two basis columns as coordinates; the angle/magnitude of each
node relative to the origin drives the hue and marker size of the geographic
overlay.  Marker sizes are normalized by the 95th-percentile magnitude so a
single hub cannot crush the scale, then clipped to [0.1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import Graph

SIZE_FLOOR = 0.1


class BasisKind(str, Enum):
    RAW_EIGENVECTORS = "raw"
    SLEPIAN = "slepian"


@dataclass(frozen=True)
class EmbeddingFrame:
    """Per-node 2-D coordinates with derived angle/magnitude styling."""

    coords: np.ndarray
    color_scalar: np.ndarray
    magnitude: np.ndarray
    basis_kind: BasisKind
    axis_indices: tuple[int, int]

    @property
    def node_count(self) -> int:
        return int(self.coords.shape[0])

    @property
    def angles(self) -> np.ndarray:
        return np.arctan2(self.coords[:, 1], self.coords[:, 0])


@dataclass(frozen=True)
class GeoOverlay:
    """Geographic styling: hue in [0, 360) from the angle, size in [0.1, 1]."""

    lon: np.ndarray
    lat: np.ndarray
    hue: np.ndarray
    size: np.ndarray


def embed(
    vectors: np.ndarray,
    axes: tuple[int, int],
    color_axis: int | None = None,
    basis_kind: BasisKind = BasisKind.RAW_EIGENVECTORS,
) -> EmbeddingFrame:
    """Project basis columns (a, b) into the plane.

    Without a color axis the color scalar is the angle atan2(y, x).
    """
    v = np.asarray(vectors, dtype=np.float64)
    if v.ndim != 2:
        raise ValueError("vectors must be a 2-D array of basis columns")
    a, b = int(axes[0]), int(axes[1])
    m = v.shape[1]
    if not (0 <= a < m and 0 <= b < m):
        raise ValueError(f"axes {axes} out of range for {m} columns")
    if a == b:
        raise ValueError("axes must name two different columns")
    if color_axis is not None and not 0 <= int(color_axis) < m:
        raise ValueError(f"color axis {color_axis} out of range for {m} columns")

    coords = np.stack([v[:, a], v[:, b]], axis=1)
    if not np.all(np.isfinite(coords)):
        raise ValueError("coordinates must be finite")
    magnitude = np.hypot(coords[:, 0], coords[:, 1])
    if color_axis is None:
        color = np.arctan2(coords[:, 1], coords[:, 0])
    else:
        color = v[:, int(color_axis)].copy()
    for arr in (coords, color, magnitude):
        arr.setflags(write=False)
    return EmbeddingFrame(
        coords=coords,
        color_scalar=color,
        magnitude=magnitude,
        basis_kind=BasisKind(basis_kind),
        axis_indices=(a, b),
    )


def frame_styling(frame: EmbeddingFrame) -> tuple[np.ndarray, np.ndarray]:
    """(hue, size) for a frame: hue from the angle, size from the magnitude.

    Sizes are magnitudes over the 95th-percentile magnitude (falling back to
    the maximum when that is zero), clipped to [0.1, 1].
    """
    hue = np.degrees(frame.angles) % 360.0
    mag = frame.magnitude
    ref = float(np.percentile(mag, 95))
    if ref <= 0.0:
        ref = float(np.max(mag))
    if ref > 0.0:
        size = np.clip(mag / ref, SIZE_FLOOR, 1.0)
    else:
        size = np.full_like(mag, SIZE_FLOOR)
    return hue, size


def geographic_overlay(frame: EmbeddingFrame, g: Graph) -> GeoOverlay:
    """Style each node for a map: position from the graph, hue/size from the frame."""
    if g.node_positions is None:
        raise ValueError("graph has no node positions (lon/lat required)")
    if g.node_count != frame.node_count:
        raise ValueError(
            f"frame covers {frame.node_count} nodes but graph has {g.node_count}"
        )
    lon = g.node_positions[:, 0].copy()
    lat = g.node_positions[:, 1].copy()
    hue, size = frame_styling(frame)
    for arr in (lon, lat, hue, size):
        arr.setflags(write=False)
    return GeoOverlay(lon=lon, lat=lat, hue=hue, size=size)


def write_frame(path, frame: EmbeddingFrame, g: Graph) -> None:
    """Tabular frame export: id, label, x, y, color_scalar, magnitude, lon, lat, hue, size.

    Position columns are left blank when the graph has no 2-D positions.
    """
    from .edgelist import atomic_write_text

    if g.node_count != frame.node_count:
        raise ValueError("frame and graph node counts differ")
    hue, size = frame_styling(frame)
    has_lonlat = g.node_positions is not None and g.node_positions.shape[1] == 2
    lines = ["id\tlabel\tx\ty\tcolor_scalar\tmagnitude\tlon\tlat\thue\tsize"]
    for i in range(frame.node_count):
        label = g.node_labels[i] if g.node_labels else ""
        lon = repr(float(g.node_positions[i, 0])) if has_lonlat else ""
        lat = repr(float(g.node_positions[i, 1])) if has_lonlat else ""
        lines.append(
            "\t".join(
                [
                    str(i),
                    label,
                    repr(float(frame.coords[i, 0])),
                    repr(float(frame.coords[i, 1])),
                    repr(float(frame.color_scalar[i])),
                    repr(float(frame.magnitude[i])),
                    lon,
                    lat,
                    repr(float(hue[i])),
                    repr(float(size[i])),
                ]
            )
        )
    atomic_write_text(path, "\n".join(lines) + "\n")
