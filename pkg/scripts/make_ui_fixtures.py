"""Record service responses for the frontend test suite.

Builds a deterministic three-community graph shaped like the airports data
(continent attributes, hub connectors, lon/lat positions), runs the real
service against it, and freezes endpoint responses as JSON fixtures.  Rerun
after changing the compute pipeline:

    python3 scripts/make_ui_fixtures.py
"""

import json
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from slepnet.graph import build_graph
from slepnet.service import ServiceConfig, SlepianService, create_app

OUT = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"

REGIONS = [
    # (continent, sub-blocks, nodes per block, lon range, lat range, label prefix)
    ("Europe", 3, 27, (-10.0, 35.0), (38.0, 62.0), "EU"),
    ("North America", 1, 70, (-125.0, -70.0), (28.0, 52.0), "NA"),
    ("Asia", 1, 60, (65.0, 140.0), (8.0, 50.0), "AS"),
]


def build_synthetic_graph():
    rng = np.random.default_rng(2025)
    labels, continents, lons, lats = [], [], [], []
    blocks = []  # (start, stop) per sub-block
    continent_span = {}
    start = 0
    for continent, nblocks, per_block, lon_r, lat_r, prefix in REGIONS:
        c_start = start
        for b in range(nblocks):
            stop = start + per_block
            blocks.append((start, stop))
            lon_lo = lon_r[0] + (lon_r[1] - lon_r[0]) * b / nblocks
            lon_hi = lon_r[0] + (lon_r[1] - lon_r[0]) * (b + 1) / nblocks
            for i in range(start, stop):
                labels.append(f"{prefix}{b}{i - start:02d}")
                continents.append(continent)
                lons.append(float(rng.uniform(lon_lo, lon_hi)))
                lats.append(float(rng.uniform(*lat_r)))
            start = stop
        continent_span[continent] = (c_start, start)

    n = start
    edges = {}

    def add(i, j, w):
        if i == j:
            return
        key = (min(i, j), max(i, j))
        edges[key] = edges.get(key, 0.0) + w

    # Dense inside each sub-block, moderate between blocks of one continent.
    for bs, be in blocks:
        for i in range(bs, be):
            for j in range(i + 1, be):
                if rng.random() < 0.25:
                    add(i, j, float(rng.integers(1, 4)))
    for continent, (cs, ce) in continent_span.items():
        for _ in range((ce - cs) * 2):
            i, j = rng.integers(cs, ce, size=2)
            add(int(i), int(j), float(rng.integers(1, 3)))

    # Hub connectors between continents (a few high-weight gateways).
    hubs = {c: list(rng.integers(span[0], span[1], size=3)) for c, span in continent_span.items()}
    names = list(continent_span)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            for ha in hubs[names[a]]:
                for hb in hubs[names[b]]:
                    add(int(ha), int(hb), float(rng.integers(2, 6)))

    return build_graph(
        [(i, j, w) for (i, j), w in edges.items()],
        n,
        node_labels=labels,
        node_positions=np.stack([lons, lats], axis=1),
        node_attributes={"continent": continents},
    )


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    graph = build_synthetic_graph()
    service = SlepianService(graph, ServiceConfig(w_max=100, precompute=True))
    client = TestClient(create_app(service))

    def save(name, payload):
        (OUT / name).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        print(f"wrote {name}")

    save("summary.json", client.get("/graph/summary").json())
    save("nodes.json", client.get("/graph/nodes").json())

    def query(selection, w):
        r = client.post(
            "/slepian/query",
            json={"selection": selection, "W": w, "operator": "modularity", "axes": [0, 1]},
        )
        r.raise_for_status()
        return r.json()

    all_ids = {"mode": "ids", "ids": list(range(graph.node_count))}
    europe = {"mode": "attribute", "key": "continent", "value": "Europe"}
    save("query_all_W2.json", query(all_ids, 2))
    save("query_europe_W2.json", query(europe, 2))
    save("query_europe_W80.json", query(europe, 80))
    save("query_one_node_W30.json", query({"mode": "ids", "ids": [5]}, 30))


if __name__ == "__main__":
    main()
