"""Shipped reference data: seed catalog, HR portal document, template pack.

The HR portal fixture is the end-to-end example that locks the pipeline:
seven screens (index, login, welcome, view-profile, add-candidate,
interview-result, registration), four of them action-bearing, and five
entity bindings (Emp_Profile, Emp_Credentials, Emp_Salary,
Candidate_Profile, Cand_Int_Results).  ``check_golden`` compares a
generation result against the frozen golden manifest; see its docstring
for what is byte-exact and what is structural.
"""

from __future__ import annotations

import hashlib
import json
import re
import shutil
from dataclasses import dataclass
from pathlib import Path

from ..catalog import CatalogStore, CatalogView, ComponentDescriptor, descriptor_from_dict
from ..codegen import GenerationResult, parse_ddl
from ..fui_xml import parse_fui
from ..model import FuiDocument
from ..packs import TemplatePack, load_pack
from ..validation import validate_fui

REFERENCE_PACK_NAME = "reference"

# Column names and order locked by the HR portal example; the
# Cand_Int_Results columns are a fixture invention and only its presence
# is checked.
EXPECTED_TABLES: dict[str, tuple[str, ...]] = {
    "Emp_Profile": ("emp_id", "name", "address", "dob", "experience", "doj", "email", "mobile"),
    "Emp_Credentials": ("emp_id", "password"),
    "Emp_Salary": ("emp_id", "designation", "basic", "da", "hra", "cca", "pf"),
    "Candidate_Profile": ("Regn_id", "name", "address", "qual", "email", "mobile", "experience"),
}
PRESENCE_ONLY_TABLES = ("Cand_Int_Results",)
TABLE_ORDER = ("Emp_Profile", "Emp_Credentials", "Emp_Salary",
               "Candidate_Profile", "Cand_Int_Results")


class FixtureError(Exception):
    """A shipped fixture file is missing or does not load."""


@dataclass(frozen=True)
class FixtureSet:
    catalog_seed: tuple[ComponentDescriptor, ...]
    fui_fixture: FuiDocument
    reference_pack: TemplatePack
    golden_manifest: str

    @property
    def catalog_view(self) -> CatalogView:
        return CatalogView(self.catalog_seed)


def fixture_root() -> Path:
    return Path(__file__).parent / "data"


def catalog_seed_root() -> Path:
    return fixture_root() / "store"


def fui_fixture_path() -> Path:
    return fixture_root() / "hr-portal.fui.xml"


def reference_pack_root() -> Path:
    return fixture_root() / "pack-reference"


def golden_manifest_path() -> Path:
    return fixture_root() / "golden" / "manifest.json"


def _read_text(path: Path) -> str:
    if not path.is_file():
        raise FixtureError(f"missing fixture file: {path}")
    return path.read_text(encoding="utf-8")


def load_fixtures() -> FixtureSet:
    """Load all shipped fixtures, checking that they parse and validate."""
    descriptors: list[ComponentDescriptor] = []
    catalog_dir = catalog_seed_root() / "catalog"
    if not catalog_dir.is_dir():
        raise FixtureError(f"missing fixture directory: {catalog_dir}")
    for descriptor_path in sorted(catalog_dir.glob("*/*.json")):
        try:
            descriptors.append(descriptor_from_dict(json.loads(_read_text(descriptor_path))))
        except ValueError as exc:
            raise FixtureError(f"corrupt fixture file {descriptor_path}: {exc}") from exc

    try:
        doc = parse_fui(_read_text(fui_fixture_path()))
    except ValueError as exc:
        raise FixtureError(f"corrupt fixture file {fui_fixture_path()}: {exc}") from exc

    try:
        pack = load_pack(reference_pack_root())
    except Exception as exc:
        raise FixtureError(f"cannot load reference pack: {exc}") from exc

    golden = _read_text(golden_manifest_path())

    fixtures = FixtureSet(
        catalog_seed=tuple(descriptors),
        fui_fixture=doc,
        reference_pack=pack,
        golden_manifest=golden,
    )
    report = validate_fui(doc, fixtures.catalog_view)
    if not report.ok:
        codes = ", ".join(i.code for i in report.errors)
        raise FixtureError(f"shipped document does not validate: {codes}")
    return fixtures


def seed_store(dest_root: Path | str) -> CatalogStore:
    """Copy the seed catalog into a writable root and open it as a store."""
    dest_root = Path(dest_root)
    shutil.copytree(catalog_seed_root(), dest_root, dirs_exist_ok=True)
    return CatalogStore.open(dest_root)


@dataclass(frozen=True)
class GoldenCheck:
    ok: bool
    problems: tuple[str, ...] = ()


_HTML_ID_RE = re.compile(r'<div id="([^"]+)"')


def check_golden(result: GenerationResult) -> GoldenCheck:
    """Compare a generation result for the shipped fixtures with the golden
    manifest.

    Paths must match exactly.  Most artifacts must be byte-identical
    (digest comparison).  Two classes are checked structurally instead,
    because their exact bytes come from fixture inventions rather than
    from the HR portal example: view artifacts must render precisely the
    placements of their screen (ids checked, coordinates free), and the
    schema must contain the expected tables with the expected column
    order, the Cand_Int_Results table by presence only.
    """
    fixtures = load_fixtures()
    golden = json.loads(fixtures.golden_manifest)
    expected = {entry["path"]: entry for entry in golden["artifacts"]}

    problems: list[str] = []
    actual_paths = set(result.paths())
    for path in sorted(set(expected) - actual_paths):
        problems.append(f"missing artifact: {path}")
    for path in sorted(actual_paths - set(expected)):
        problems.append(f"unexpected artifact: {path}")

    screens = {screen.id: screen for screen in fixtures.fui_fixture.screens}
    for artifact in result.artifacts:
        entry = expected.get(artifact.rel_path)
        if entry is None:
            continue
        if any(table in artifact.rel_path for table in PRESENCE_ONLY_TABLES):
            continue
        if artifact.rel_path == "schema/schema.sql":
            problems.extend(_check_schema(artifact.data.decode("utf-8")))
            continue
        if artifact.rel_path.startswith("views/"):
            screen_id = artifact.rel_path[len("views/"): -len(".html")]
            screen = screens.get(screen_id)
            if screen is None:
                problems.append(f"view for unknown screen: {artifact.rel_path}")
                continue
            rendered = set(_HTML_ID_RE.findall(artifact.data.decode("utf-8")))
            placed = {p.instance_id for p in screen.components}
            if rendered != placed:
                problems.append(
                    f"{artifact.rel_path}: rendered components {sorted(rendered)} "
                    f"!= placed components {sorted(placed)}"
                )
            continue
        digest = hashlib.sha256(artifact.data).hexdigest()
        if digest != entry["sha256"]:
            problems.append(f"{artifact.rel_path}: content differs from golden manifest")

    return GoldenCheck(ok=not problems, problems=tuple(problems))


def _check_schema(ddl_text: str) -> list[str]:
    problems = []
    tables = parse_ddl(ddl_text)
    names = [name for name, _, _ in tables]
    if names != list(TABLE_ORDER):
        problems.append(f"schema/schema.sql: tables {names} != expected {list(TABLE_ORDER)}")
        return problems
    for name, columns, _pk in tables:
        wanted = EXPECTED_TABLES.get(name)
        if wanted is not None and tuple(columns) != wanted:
            problems.append(
                f"schema/schema.sql: table {name} columns {columns} != expected {list(wanted)}"
            )
    return problems
