"""Bundled sample databases: Google Maps API v2/v3 usage and their
frequent-item projections. See ``data/README.md`` for provenance notes."""

from importlib import resources
from pathlib import Path

from .transactions import TransactionDatabase, parse_database


def dataset_path(name: str) -> Path:
    """Filesystem path of a bundled data file (e.g. ``"v2.csv"``)."""
    path = Path(str(resources.files("cantree").joinpath("data", name)))
    if not path.exists():
        raise FileNotFoundError(f"no bundled dataset {name!r}")
    return path


def load_dataset(name: str) -> TransactionDatabase:
    """Parse a bundled transaction CSV."""
    return parse_database(dataset_path(name).read_text(encoding="utf-8"))
