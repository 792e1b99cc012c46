from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fui_studio.catalog import CatalogStore
from fui_studio.fixtures import FixtureSet, load_fixtures, seed_store


@pytest.fixture(scope="session")
def fixtures() -> FixtureSet:
    return load_fixtures()


@pytest.fixture()
def store(tmp_path: Path) -> CatalogStore:
    """A writable catalog store pre-seeded with the reference components."""
    return seed_store(tmp_path / "store")


@pytest.fixture()
def empty_store(tmp_path: Path) -> CatalogStore:
    return CatalogStore.open(tmp_path / "empty-store", create=True)
