"""Embedding frames and geographic overlays."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from slepnet.embedding import BasisKind, embed, geographic_overlay
from slepnet.graph import build_graph


def test_axes_copied_verbatim(rng):
    v = rng.standard_normal((10, 2))
    frame = embed(v, axes=(0, 1))
    assert_allclose(frame.coords[:, 0], v[:, 0])
    assert_allclose(frame.coords[:, 1], v[:, 1])
    assert frame.axis_indices == (0, 1)


def test_zero_node_has_zero_magnitude():
    v = np.array([[0.0, 0.0], [1.0, 1.0]])
    frame = embed(v, axes=(0, 1))
    assert frame.magnitude[0] == 0.0
    assert frame.magnitude[1] == pytest.approx(np.sqrt(2))


def test_color_defaults_to_angle():
    v = np.array([[1.0, 1.0], [-1.0, 0.0]])
    frame = embed(v, axes=(0, 1))
    assert frame.color_scalar[0] == pytest.approx(np.pi / 4)
    assert frame.color_scalar[1] == pytest.approx(np.pi)


def test_explicit_color_axis(rng):
    v = rng.standard_normal((8, 3))
    frame = embed(v, axes=(1, 2), color_axis=0, basis_kind=BasisKind.SLEPIAN)
    assert_allclose(frame.color_scalar, v[:, 0])
    assert frame.basis_kind == BasisKind.SLEPIAN


def test_axis_validation(rng):
    v = rng.standard_normal((5, 2))
    with pytest.raises(ValueError, match="out of range"):
        embed(v, axes=(0, 2))
    with pytest.raises(ValueError, match="different"):
        embed(v, axes=(1, 1))
    with pytest.raises(ValueError, match="color axis"):
        embed(v, axes=(0, 1), color_axis=5)


def test_sign_flip_equivariance(rng):
    v = rng.standard_normal((12, 2))
    flipped = v * np.array([-1.0, 1.0])
    f1 = embed(v, axes=(0, 1))
    f2 = embed(flipped, axes=(0, 1))
    assert_allclose(f2.coords[:, 0], -f1.coords[:, 0])
    assert_allclose(f2.coords[:, 1], f1.coords[:, 1])


def test_magnitude_angle_round_trip(rng):
    v = rng.standard_normal((20, 2))
    frame = embed(v, axes=(0, 1))
    x = frame.magnitude * np.cos(frame.angles)
    y = frame.magnitude * np.sin(frame.angles)
    assert np.max(np.abs(x - frame.coords[:, 0])) < 1e-12
    assert np.max(np.abs(y - frame.coords[:, 1])) < 1e-12


def geo_graph(n, rng):
    pos = np.stack([rng.uniform(-180, 180, n), rng.uniform(-60, 60, n)], axis=1)
    return build_graph([(i, i + 1, 1.0) for i in range(n - 1)], n, node_positions=pos)


def test_overlay_all_zero_frame(rng):
    g = geo_graph(6, rng)
    frame = embed(np.zeros((6, 2)), axes=(0, 1))
    overlay = geographic_overlay(frame, g)
    assert_allclose(overlay.size, np.full(6, 0.1))
    assert_allclose(overlay.lon, g.node_positions[:, 0])


def test_overlay_single_nonzero_node(rng):
    g = geo_graph(8, rng)
    v = np.zeros((8, 2))
    v[3] = (0.6, 0.8)
    overlay = geographic_overlay(embed(v, axes=(0, 1)), g)
    assert overlay.size[3] == 1.0
    others = np.delete(overlay.size, 3)
    assert_allclose(others, np.full(7, 0.1))


def test_overlay_scale_invariance(rng):
    g = geo_graph(30, rng)
    v = rng.standard_normal((30, 2))
    s1 = geographic_overlay(embed(v, axes=(0, 1)), g).size
    s2 = geographic_overlay(embed(17.0 * v, axes=(0, 1)), g).size
    assert_allclose(s1, s2, atol=1e-12)


def test_overlay_hue_range(rng):
    g = geo_graph(40, rng)
    v = rng.standard_normal((40, 2))
    overlay = geographic_overlay(embed(v, axes=(0, 1)), g)
    assert np.all(overlay.hue >= 0.0)
    assert np.all(overlay.hue < 360.0)
    assert np.all((overlay.size >= 0.1) & (overlay.size <= 1.0))


def test_overlay_requires_positions(rng):
    g = build_graph([(0, 1, 1.0)], 2)
    frame = embed(rng.standard_normal((2, 2)), axes=(0, 1))
    with pytest.raises(ValueError, match="positions"):
        geographic_overlay(frame, g)
