"""Bundled dataset constructions: the Swiss-roll benchmark and OpenFlights ingestion."""

from .openflights import (
    IngestReport,
    IngestResult,
    continent_of,
    fixture_paths,
    ingest_routes,
    select_by_attribute,
)
from .swiss_roll import DatasetError, SwissRollConfig, generate_swiss_roll, roll_positions

__all__ = [
    "DatasetError",
    "SwissRollConfig",
    "generate_swiss_roll",
    "roll_positions",
    "IngestReport",
    "IngestResult",
    "continent_of",
    "fixture_paths",
    "ingest_routes",
    "select_by_attribute",
]
