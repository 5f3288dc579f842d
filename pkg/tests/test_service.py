"""HTTP service endpoints and cache behavior."""

import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from slepnet.datasets import fixture_paths, ingest_routes
from slepnet.graph import OperatorKind
from slepnet.service import ServiceConfig, SlepianService, create_app


@pytest.fixture(scope="module")
def fixture_graph():
    airports, routes = fixture_paths()
    return ingest_routes(airports, routes).graph


@pytest.fixture
def client(fixture_graph):
    service = SlepianService(
        fixture_graph,
        ServiceConfig(default_operator=OperatorKind.MODULARITY, w_max=5, precompute=True),
    )
    return TestClient(create_app(service))


def strip_timing(payload: dict) -> dict:
    out = dict(payload)
    out.pop("timing", None)
    return out


def test_summary(client):
    r = client.get("/graph/summary")
    assert r.status_code == 200
    body = r.json()
    assert body["N"] == 6
    assert body["edge_count"] == 6
    assert "continent" in body["attribute_keys"]
    assert body["degree_extremes"]["max"] == 5.0
    assert "modularity" in body["available_operators"]


def test_no_graph_loaded():
    service = SlepianService(None)
    client = TestClient(create_app(service))
    r = client.get("/graph/summary")
    assert r.status_code == 503
    assert "no graph loaded" in r.json()["detail"]


def test_nodes_listing(client):
    r = client.get("/graph/nodes")
    assert r.status_code == 200
    nodes = r.json()["nodes"]
    assert len(nodes) == 6
    first = nodes[0]
    assert first["label"] == "AAA"
    assert first["lon"] == 2.0 and first["lat"] == 48.0
    assert first["attributes"]["continent"] == "Europe"
    assert first["degree"] == 5.0


def test_query_attribute_selection(client):
    r = client.post(
        "/slepian/query",
        json={"selection": {"mode": "attribute", "key": "continent", "value": "Europe"},
              "W": 3, "operator": "modularity", "axes": [0, 1]},
    )
    assert r.status_code == 200, r.text
    body = r.json()
    assert body["selection_size"] == 2
    assert body["K"] == pytest.approx(3 * 2 / 6)
    assert len(body["mu_sequence"]) == 3
    frame = body["frame"]
    assert len(frame["x"]) == 6
    assert frame["label"][0] == "AAA"
    assert frame["in_selection"] == [True, True, False, False, False, False]
    assert body["timing"]["basis_cached"] is True


def test_query_single_node_selection(client):
    r = client.post(
        "/slepian/query",
        json={"selection": {"mode": "attribute", "key": "label", "value": "EEE"},
              "W": 4, "axes": [0, 1]},
    )
    assert r.status_code == 200
    mu = r.json()["mu_sequence"]
    assert sum(1 for v in mu if v > 1e-10) == 1


def test_query_ids_selection(client):
    r = client.post(
        "/slepian/query",
        json={"selection": {"mode": "ids", "ids": [2, 3]}, "W": 2},
    )
    assert r.status_code == 200
    assert r.json()["selection_size"] == 2


def test_query_unknown_ids_itemized(client):
    r = client.post(
        "/slepian/query",
        json={"selection": {"mode": "ids", "ids": [2, 17, 99]}, "W": 2},
    )
    assert r.status_code == 400
    assert r.json()["detail"]["unknown_ids"] == [17, 99]


def test_query_bandwidth_out_of_range(client):
    r = client.post(
        "/slepian/query",
        json={"selection": {"mode": "ids", "ids": [0]}, "W": 6},
    )
    assert r.status_code == 400
    assert "W < N" in r.json()["detail"].replace("W must satisfy 1 <= W < N=6", "W < N")


def test_cache_transparency(fixture_graph):
    # Same query against a cold and a warm cache yields identical payloads.
    payload = {"selection": {"mode": "attribute", "key": "continent", "value": "Africa"},
               "W": 4, "operator": "modularity", "axes": [0, 1]}
    cold_service = SlepianService(
        fixture_graph, ServiceConfig(w_max=5, precompute=False)
    )
    cold_client = TestClient(create_app(cold_service))
    first = cold_client.post("/slepian/query", json=payload).json()
    assert first["timing"]["basis_cached"] is False
    second = cold_client.post("/slepian/query", json=payload).json()
    assert second["timing"]["basis_cached"] is True
    assert json.dumps(strip_timing(first), sort_keys=True) == json.dumps(
        strip_timing(second), sort_keys=True
    )

    warm_service = SlepianService(fixture_graph, ServiceConfig(w_max=5, precompute=True))
    warm_client = TestClient(create_app(warm_service))
    warm = warm_client.post("/slepian/query", json=payload).json()
    assert json.dumps(strip_timing(first), sort_keys=True) == json.dumps(
        strip_timing(warm), sort_keys=True
    )


def test_concurrent_identical_queries(fixture_graph):
    service = SlepianService(fixture_graph, ServiceConfig(w_max=5, precompute=False))
    client = TestClient(create_app(service))
    payload = {"selection": {"mode": "ids", "ids": [0, 1, 2]}, "W": 3}

    def run(_):
        return client.post("/slepian/query", json=payload).json()

    with ThreadPoolExecutor(max_workers=6) as pool:
        results = list(pool.map(run, range(6)))
    baseline = json.dumps(strip_timing(results[0]), sort_keys=True)
    for r in results[1:]:
        assert json.dumps(strip_timing(r), sort_keys=True) == baseline


def test_spectrum_endpoint(client):
    r = client.get("/spectrum", params={"operator": "modularity", "W": 4})
    assert r.status_code == 200
    body = r.json()
    assert len(body["eigenvalues"]) == 4
    assert len(body["residual_norms"]) == 4
    assert "mu_sequence" not in body

    r = client.get(
        "/spectrum",
        params={"operator": "modularity", "W": 4, "selection": "continent=Europe"},
    )
    body = r.json()
    assert len(body["mu_sequence"]) == 4
    assert body["selection_size"] == 2


def test_spectrum_unknown_operator(client):
    r = client.get("/spectrum", params={"operator": "adjacency", "W": 3})
    assert r.status_code == 400


def test_query_matches_direct_pipeline(client, fixture_graph):
    # The service is the same pure pipeline as the library calls.
    from slepnet.graph import make_operator
    from slepnet.slepian import SubgraphSelection, compute_slepians
    from slepnet.spectral import SolverConfig, solve_extreme

    r = client.post(
        "/slepian/query",
        json={"selection": {"mode": "ids", "ids": [0, 1]}, "W": 3, "operator": "modularity"},
    ).json()

    op = make_operator(fixture_graph, OperatorKind.MODULARITY)
    basis = solve_extreme(op, SolverConfig(bandwidth=5)).truncate(3)
    sl = compute_slepians(basis, SubgraphSelection([0, 1], 6))
    assert r["mu_sequence"] == sl.concentrations.tolist()
    assert r["frame"]["x"] == sl.vectors[:, 0].tolist()
    assert r["frame"]["y"] == sl.vectors[:, 1].tolist()


def test_query_color_axis(client):
    r = client.post(
        "/slepian/query",
        json={"selection": {"mode": "ids", "ids": [0, 1]}, "W": 3,
              "axes": [1, 2], "color_axis": 0},
    )
    assert r.status_code == 200
    body = r.json()
    frame = body["frame"]
    # Color column equals the first Slepian vector, not the angle.
    assert frame["color_scalar"] != frame["angle"]
    r2 = client.post(
        "/slepian/query",
        json={"selection": {"mode": "ids", "ids": [0, 1]}, "W": 3, "axes": [1, 2]},
    )
    assert r2.json()["frame"]["color_scalar"] == r2.json()["frame"]["angle"]
