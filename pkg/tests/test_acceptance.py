"""Acceptance suite: one test per release criterion, each printing a
PASS line with the measured facts.  Tolerances are exact; run with
``pytest -s tests/test_acceptance.py`` to see the lines."""

import json
import random
import subprocess
import sys
import time

import pytest

from fui_studio.catalog import ReuseCount
from fui_studio.codegen import generate
from fui_studio.fixtures import (
    catalog_seed_root,
    fui_fixture_path,
    reference_pack_root,
    seed_store,
)
from fui_studio.fui_xml import parse_fui, serialize_fui
from fui_studio.template_engine import (
    TemplateRenderError,
    TemplateSyntaxError,
    parse_template,
    render,
)
from fui_studio.validation import validate_fui

from randdoc import random_document, random_valid_document
from test_template_engine import FUZZ_CORPUS, _must_error
from variants import CORRUPTION_VARIANTS

# Column lists the generated schema must reproduce verbatim.
GOLDEN_TABLES = {
    "Emp_Profile": ["emp_id", "name", "address", "dob", "experience", "doj", "email", "mobile"],
    "Emp_Credentials": ["emp_id", "password"],
    "Emp_Salary": ["emp_id", "designation", "basic", "da", "hra", "cca", "pf"],
    "Candidate_Profile": ["Regn_id", "name", "address", "qual", "email", "mobile", "experience"],
}

EXPECTED_VIEWS = {"index", "login", "welcome", "view-profile",
                  "add-candidate", "interview-result", "registration"}
EXPECTED_HANDLERS = {"login", "registration", "add-candidate", "interview-result"}


def _parse_schema_tables(ddl: str) -> dict[str, list[str]]:
    """Minimal independent DDL reader used only by this suite."""
    tables: dict[str, list[str]] = {}
    current = None
    for line in ddl.splitlines():
        stripped = line.strip()
        if stripped.startswith("CREATE TABLE "):
            current = stripped[len("CREATE TABLE "):].split(" ")[0]
            tables[current] = []
        elif current and stripped.startswith("PRIMARY KEY"):
            current = None
        elif current and stripped.rstrip(","):
            tables[current].append(stripped.split(" ")[0])
    return tables


def _cli_generate(tmp_path, name: str) -> bytes:
    out = tmp_path / name
    proc = subprocess.run(
        [sys.executable, "-m", "fui_studio.cli", "generate", str(fui_fixture_path()),
         "--catalog", str(catalog_seed_root()),
         "--pack", str(reference_pack_root()),
         "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return (out / "manifest.json").read_bytes()


def test_golden_hr_portal_generation(fixtures, tmp_path):
    result = generate(fixtures.fui_fixture, fixtures.reference_pack, fixtures.catalog_view)

    views = {a.provenance.screen for a in result.artifacts if a.provenance.role == "view"}
    handlers = {a.provenance.screen for a in result.artifacts if a.provenance.role == "handler"}
    dao_base = [a for a in result.artifacts if a.provenance.role == "dao_base"]
    dao_entities = [a.provenance.entity for a in result.artifacts
                    if a.provenance.role == "dao_entity"]
    assert views == EXPECTED_VIEWS
    assert handlers == EXPECTED_HANDLERS
    assert len(dao_base) == 1
    assert sorted(dao_entities) == sorted(list(GOLDEN_TABLES) + ["Cand_Int_Results"])

    schema = result.find("schema/schema.sql").data.decode("utf-8")
    tables = _parse_schema_tables(schema)
    assert len(tables) == 5
    for table, columns in GOLDEN_TABLES.items():
        assert tables[table] == columns, f"{table} columns diverge"
    assert "Cand_Int_Results" in tables  # presence only

    # determinism: consecutive in-process runs...
    rerun = generate(fixtures.fui_fixture, fixtures.reference_pack, fixtures.catalog_view)
    assert rerun.manifest.encode() == result.manifest.encode()
    # ...and two separate process invocations
    first = _cli_generate(tmp_path, "run1")
    second = _cli_generate(tmp_path, "run2")
    assert first == second == result.manifest.encode()

    print("\nACCEPTANCE golden-hr-portal PASS: 7 views, 4 handlers, 1+5 DAOs, "
          "5 tables verbatim, manifests byte-identical across runs and processes")


def test_fui_round_trip_property():
    rng = random.Random(1234567)
    started = time.monotonic()
    count = 1000
    for _ in range(count):
        doc = random_document(rng)
        text = serialize_fui(doc)
        assert parse_fui(text) == doc
        assert serialize_fui(doc) == text  # canonical byte stability
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"round-trip property took {elapsed:.1f}s"
    print(f"\nACCEPTANCE fui-round-trip PASS: {count} documents in {elapsed:.2f}s, "
          "parse(serialize(d)) == d and serialization byte-stable")


def test_validator_corpus(fixtures):
    report = validate_fui(fixtures.fui_fixture, fixtures.catalog_view)
    assert report.issues == (), "clean fixture must have zero findings"
    for name, corrupt, expected_code in CORRUPTION_VARIANTS:
        corrupted_report = validate_fui(corrupt(fixtures.fui_fixture), fixtures.catalog_view)
        assert corrupted_report.codes() == (expected_code,), (
            f"variant {name}: expected exactly {expected_code}, got {corrupted_report.codes()}"
        )
    print(f"\nACCEPTANCE validator-corpus PASS: clean fixture has zero errors; "
          f"{len(CORRUPTION_VARIANTS)} corrupted variants each yield exactly their code")


def test_template_engine_suite():
    # substitution, sections, conditionals, escaping
    ctx = {"name": "world", "items": ["a", "b"], "empty": [], "on": True, "off": False}
    checks = [
        ("plain {{name}}", "plain world"),
        ("{{#each items}}<{{.}}>{{/each}}", "<a><b>"),
        ("{{#each empty}}never{{/each}}", ""),
        ("{{#if on}}yes{{/if}}{{#if off}}no{{/if}}", "yes"),
        (r"\{{name}} stays", "{{name}} stays"),
    ]
    for template, expected in checks:
        assert render(parse_template(template), ctx) == expected

    with pytest.raises(TemplateRenderError):
        render(parse_template("{{missing}}"), ctx)

    rng = random.Random(424242)
    cuts = 500
    errored = 0
    for _ in range(cuts):
        template = rng.choice(FUZZ_CORPUS)
        prefix = template[: rng.randint(0, len(template) - 1)]
        if _must_error(prefix):
            errored += 1
            with pytest.raises(TemplateSyntaxError):
                parse_template(prefix)
        else:
            parse_template(prefix)
    print(f"\nACCEPTANCE template-engine PASS: core semantics exact; {cuts} random "
          f"truncations handled, {errored} correctly rejected")


def test_reuse_stats_oracle_equivalence(tmp_path):
    store = seed_store(tmp_path / "store")
    seed = tuple(store.heads())
    rng = random.Random(77)
    projects = [f"project-{i}" for i in range(5)]

    def recount() -> dict[str, ReuseCount]:
        totals: dict[str, ReuseCount] = {}
        for slug in store.project_slugs():
            doc = parse_fui((store.root / "projects" / f"{slug}.fui.xml").read_text())
            per_project: dict[str, int] = {}
            for screen in doc.screens:
                for placement in screen.components:
                    per_project[placement.component_ref] = (
                        per_project.get(placement.component_ref, 0) + 1
                    )
            for ref, n in per_project.items():
                cur = totals.get(ref, ReuseCount())
                totals[ref] = ReuseCount(cur.placements + n, cur.projects + 1)
        return totals

    sequences = 20
    for i in range(sequences):
        project = rng.choice(projects)  # re-records happen by construction
        doc = random_valid_document(rng, seed, project)
        store.record_reuse(project, doc)
        assert store.stats() == recount(), f"divergence after sequence {i}"

    final = recount()
    zero_set = sorted(cid for cid in store.ids() if final.get(cid, ReuseCount()).placements == 0)
    assert [cid for cid, _ in store.rarely_used_report(0)] == zero_set
    print(f"\nACCEPTANCE reuse-stats PASS: {sequences} randomized record sequences match "
          "the from-scratch recount; rarely-used(0) equals the zero-placement set")


def test_cli_api_manifest_equality(tmp_path):
    cli_manifest = _cli_generate(tmp_path, "cli-out")

    from fastapi.testclient import TestClient

    from fui_studio.api import create_app

    store = seed_store(tmp_path / "api-store")
    app = create_app(store.root, [reference_pack_root()])
    with TestClient(app) as client:
        xml = fui_fixture_path().read_text(encoding="utf-8")
        assert client.put("/api/projects/hr-portal/fui", content=xml).status_code == 201
        generated = client.post("/api/projects/hr-portal/generate",
                                params={"pack": "reference"})
        assert generated.status_code == 200
        api_manifest = client.get("/api/projects/hr-portal/artifacts/manifest.json").content

    assert api_manifest == cli_manifest
    print("\nACCEPTANCE cli-api-equality PASS: API manifest bytes equal CLI manifest bytes")


def test_primary_runs_without_secondary():
    loaded = [name for name in sys.modules if "frontend" in name.lower()]
    assert loaded == []
    print("\nACCEPTANCE primary-standalone PASS: all criteria above ran against the "
          "Python package alone; no designer-UI build present or imported")
