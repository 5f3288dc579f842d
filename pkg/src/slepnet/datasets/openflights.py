"""OpenFlights ingestion: airports + routes into an undirected weighted graph.

Edge weight between two airports is the number of route records connecting
them in either direction.  Airports without any accepted route are dropped.
Node metadata carries the IATA label, (lon, lat) position, and country /
continent attributes; the continent comes from a bundled country table with a
timezone-prefix fallback.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

from ..graph import Graph, build_graph
from ..slepian import SelectionError, SubgraphSelection
from .swiss_roll import DatasetError

log = logging.getLogger(__name__)

_NULL = "\\N"

_TZ_PREFIX_CONTINENT = {
    "Europe": "Europe",
    "Africa": "Africa",
    "Asia": "Asia",
    "Australia": "Oceania",
    "Pacific": "Oceania",
    "Antarctica": "Antarctica",
}


def _load_country_table() -> dict[str, str]:
    table = {}
    ref = resources.files("slepnet.datasets").joinpath("data/continents.csv")
    with ref.open() as fh:
        for row in csv.DictReader(fh):
            table[row["country"]] = row["continent"]
    return table


_COUNTRY_CONTINENT = _load_country_table()


def continent_of(country: str, tz_name: str = "") -> str:
    """Continent for an airport row; 'Unknown' when unresolvable."""
    if country in _COUNTRY_CONTINENT:
        return _COUNTRY_CONTINENT[country]
    prefix = tz_name.split("/", 1)[0] if tz_name else ""
    if prefix in _TZ_PREFIX_CONTINENT:
        return _TZ_PREFIX_CONTINENT[prefix]
    return "Unknown"


@dataclass
class _AirportRow:
    airport_id: str
    name: str
    country: str
    iata: str
    icao: str
    latitude: float
    longitude: float
    tz_name: str

    @property
    def label(self) -> str:
        return self.iata or self.icao or self.airport_id


@dataclass(frozen=True)
class IngestReport:
    """Counters from one ingestion run; weights conserve accepted_routes."""

    airports_read: int
    airports_dropped: int
    accepted_routes: int
    skipped_unknown_airport: int
    skipped_self_loops: int
    malformed_airport_lines: tuple[int, ...] = field(default=())
    malformed_route_lines: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class IngestResult:
    graph: Graph
    report: IngestReport


def _open_rows(source: str | Path | IO[str]) -> Iterable[list[str]]:
    if hasattr(source, "read"):
        yield from csv.reader(source)
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            yield from csv.reader(fh)


def _clean(value: str) -> str:
    value = value.strip()
    return "" if value == _NULL else value


def _parse_airports(source) -> tuple[list[_AirportRow], list[int]]:
    rows: list[_AirportRow] = []
    bad: list[int] = []
    for lineno, rec in enumerate(_open_rows(source), start=1):
        if not rec:
            continue
        if len(rec) < 12:
            bad.append(lineno)
            continue
        try:
            rows.append(
                _AirportRow(
                    airport_id=_clean(rec[0]),
                    name=_clean(rec[1]),
                    country=_clean(rec[3]),
                    iata=_clean(rec[4]),
                    icao=_clean(rec[5]),
                    latitude=float(rec[6]),
                    longitude=float(rec[7]),
                    tz_name=_clean(rec[11]),
                )
            )
        except ValueError:
            bad.append(lineno)
    if bad:
        log.warning("skipped %d malformed airport rows (lines %s...)", len(bad), bad[:5])
    return rows, bad


def ingest_routes(airport_source, route_source) -> IngestResult:
    """Build the route-count graph from OpenFlights airport and route tables.

    Routes referencing unknown airports are skipped and counted; self-loop
    routes likewise.  Airports left without any route are removed before
    indexing, in file order.
    """
    airports, bad_airports = _parse_airports(airport_source)
    if not airports:
        raise DatasetError("no valid airport rows found")

    key_to_pos: dict[str, int] = {}
    for pos, row in enumerate(airports):
        for key in (row.airport_id, row.iata, row.icao):
            if key and key not in key_to_pos:
                key_to_pos[key] = pos

    weights: dict[tuple[int, int], float] = {}
    accepted = 0
    unknown = 0
    self_loops = 0
    bad_routes: list[int] = []
    for lineno, rec in enumerate(_open_rows(route_source), start=1):
        if not rec:
            continue
        if len(rec) < 6:
            bad_routes.append(lineno)
            continue
        src = _clean(rec[3]) or _clean(rec[2])
        dst = _clean(rec[5]) or _clean(rec[4])
        if not src or not dst:
            bad_routes.append(lineno)
            continue
        a = key_to_pos.get(src)
        b = key_to_pos.get(dst)
        if a is None or b is None:
            unknown += 1
            continue
        if a == b:
            self_loops += 1
            continue
        key = (min(a, b), max(a, b))
        weights[key] = weights.get(key, 0.0) + 1.0
        accepted += 1
    if unknown:
        log.warning("skipped %d routes referencing unknown airports", unknown)
    if bad_routes:
        log.warning("skipped %d malformed route rows (lines %s...)", len(bad_routes), bad_routes[:5])

    connected = sorted({i for pair in weights for i in pair})
    if not connected:
        raise DatasetError("no routes could be matched to the airport table")
    reindex = {old: new for new, old in enumerate(connected)}

    edges = [(reindex[i], reindex[j], w) for (i, j), w in weights.items()]
    kept = [airports[old] for old in connected]
    graph = build_graph(
        edges,
        len(kept),
        node_labels=[r.label for r in kept],
        node_positions=[(r.longitude, r.latitude) for r in kept],
        node_attributes={
            "continent": [continent_of(r.country, r.tz_name) for r in kept],
            "country": [r.country for r in kept],
        },
    )
    report = IngestReport(
        airports_read=len(airports),
        airports_dropped=len(airports) - len(kept),
        accepted_routes=accepted,
        skipped_unknown_airport=unknown,
        skipped_self_loops=self_loops,
        malformed_airport_lines=tuple(bad_airports),
        malformed_route_lines=tuple(bad_routes),
    )
    return IngestResult(graph=graph, report=report)


def select_by_attribute(g: Graph, key: str, value: str) -> SubgraphSelection:
    """All nodes whose attribute (or label, via key='label') equals the value."""
    if key == "label":
        if g.node_labels is None:
            raise SelectionError("graph has no node labels")
        column = g.node_labels
    else:
        if g.node_attributes is None or key not in g.node_attributes:
            have = ", ".join(g.attribute_keys()) or "none"
            raise SelectionError(f"attribute {key!r} not present (have: {have})")
        column = g.node_attributes[key]
    indices = [i for i, v in enumerate(column) if v == value]
    if not indices:
        raise SelectionError(f"no nodes with {key}={value!r}")
    return SubgraphSelection(indices, g.node_count)


def fixture_paths() -> tuple[Path, Path]:
    """Bundled 6-airport / 8-route fixture (airports, routes)."""
    base = resources.files("slepnet.datasets").joinpath("data")
    return Path(str(base.joinpath("fixture_airports.dat"))), Path(
        str(base.joinpath("fixture_routes.dat"))
    )
