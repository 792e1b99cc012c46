import hashlib
import json
import random
import re

import pytest

from fui_studio.codegen import (
    GeneratedArtifact,
    GenerationError,
    GenerationResult,
    NonEmptyOutputError,
    Provenance,
    ValidationFailedError,
    build_context,
    emit_schema,
    generate,
    sql_type,
    write_output,
)
from fui_studio.model import EntityBinding, FieldMap, FuiDocument, Placement, Screen
from fui_studio.packs import StaticFile, Template, TemplatePack

from randdoc import rand_column_type, rand_ident


VIEW_NAMES = ["index", "login", "welcome", "view-profile", "add-candidate",
              "interview-result", "registration"]
HANDLER_NAMES = ["login", "add-candidate", "registration", "interview-result"]
ENTITY_NAMES = ["Emp_Profile", "Emp_Credentials", "Emp_Salary",
                "Candidate_Profile", "Cand_Int_Results"]


@pytest.fixture(scope="module")
def hr_result(fixtures):
    return generate(fixtures.fui_fixture, fixtures.reference_pack, fixtures.catalog_view)


def test_views_cover_every_screen(hr_result):
    views = [a for a in hr_result.artifacts if a.provenance.role == "view"]
    assert sorted(a.rel_path for a in views) == sorted(f"views/{n}.html" for n in VIEW_NAMES)


def test_handlers_only_for_action_bearing_screens(hr_result):
    handlers = [a for a in hr_result.artifacts if a.provenance.role == "handler"]
    assert sorted(a.rel_path for a in handlers) == sorted(
        f"handlers/{n}.js" for n in HANDLER_NAMES
    )


def test_dao_artifacts_one_base_plus_one_per_entity(hr_result):
    base = [a for a in hr_result.artifacts if a.provenance.role == "dao_base"]
    entities = [a for a in hr_result.artifacts if a.provenance.role == "dao_entity"]
    assert len(base) == 1 and base[0].rel_path == "domain/dao/base.js"
    assert sorted(a.provenance.entity for a in entities) == sorted(ENTITY_NAMES)
    for artifact in entities:
        assert f"class {artifact.provenance.entity}DAO extends BaseDAO" in artifact.data.decode()


def test_empty_document_emits_only_singletons_and_statics(fixtures):
    doc = FuiDocument(version=1, project="empty")
    result = generate(doc, fixtures.reference_pack, fixtures.catalog_view)
    roles = [a.provenance.role for a in result.artifacts]
    assert roles == ["schema", "index", "static"]
    schema_text = result.find("schema/schema.sql").data.decode()
    assert schema_text.startswith("-- generated by pack reference v1")
    assert "CREATE TABLE" not in schema_text


def test_generation_is_deterministic(fixtures, hr_result):
    again = generate(fixtures.fui_fixture, fixtures.reference_pack, fixtures.catalog_view)
    assert [a.rel_path for a in again.artifacts] == [a.rel_path for a in hr_result.artifacts]
    assert [a.data for a in again.artifacts] == [a.data for a in hr_result.artifacts]
    assert again.manifest == hr_result.manifest


def test_artifact_order_is_role_major_then_path(hr_result):
    role_order = ["view", "handler", "dao_base", "dao_entity", "schema", "index", "static"]
    keys = [(role_order.index(a.provenance.role), a.rel_path) for a in hr_result.artifacts]
    assert keys == sorted(keys)


def test_provenance_covers_every_placement(fixtures, hr_result):
    mentioned = set()
    for artifact in hr_result.artifacts:
        mentioned.update(artifact.provenance.instance_ids)
    placed = {
        (screen.id, p.instance_id)
        for screen in fixtures.fui_fixture.screens
        for p in screen.components
    }
    assert {iid for _, iid in placed} <= mentioned
    for artifact in hr_result.artifacts:
        assert artifact.provenance.role


def test_manifest_lists_every_artifact_with_true_digests(hr_result):
    manifest = json.loads(hr_result.manifest)
    assert [e["path"] for e in manifest["artifacts"]] == hr_result.paths()
    for entry, artifact in zip(manifest["artifacts"], hr_result.artifacts):
        assert entry["size"] == len(artifact.data)
        assert entry["sha256"] == hashlib.sha256(artifact.data).hexdigest()
    assert manifest["pack"] == {"name": "reference", "version": 1}
    assert manifest["project"] == "hr-portal"


def test_validation_errors_refuse_generation(fixtures):
    doc = FuiDocument(version=1, project="p", screens=(
        Screen(id="s", title="S", width=100, height=100, components=(
            Placement(instance_id="x", component_ref="no-such", x=0, y=0, w=10, h=10, label="X"),
        )),
    ))
    with pytest.raises(ValidationFailedError) as excinfo:
        generate(doc, fixtures.reference_pack, fixtures.catalog_view)
    assert "UNKNOWN_COMPONENT" in {i.code for i in excinfo.value.report.errors}


def test_render_failure_names_artifact_and_role(fixtures):
    pack = TemplatePack(
        name="broken", version=1, target_label="broken",
        templates=(Template(role="index", path_pattern="index.txt", body="{{nonexistent}}"),),
    )
    doc = FuiDocument(version=1, project="p")
    with pytest.raises(GenerationError) as excinfo:
        generate(doc, pack, fixtures.catalog_view)
    message = str(excinfo.value)
    assert "index.txt" in message and "index template" in message and "MISSING_PATH" in message


def test_static_path_collision_is_rejected(fixtures):
    pack = TemplatePack(
        name="clash", version=1, target_label="clash",
        templates=(Template(role="index", path_pattern="index.html", body="x"),),
        static_files=(StaticFile("index.html", b"static wins?"),),
    )
    with pytest.raises(GenerationError):
        generate(FuiDocument(version=1, project="p"), pack, fixtures.catalog_view)


# -- emit_schema --------------------------------------------------------------


def test_emit_schema_salary_table_exact_text():
    binding = EntityBinding(
        screen_id="registration", entity_name="Emp_Salary", primary_key="emp_id",
        field_maps=(
            FieldMap("emp-id", "emp_id", "text(20)"),
            FieldMap("designation", "designation", "text(80)"),
            FieldMap("basic", "basic", "decimal(10,2)"),
            FieldMap("da", "da", "decimal(10,2)"),
            FieldMap("hra", "hra", "decimal(10,2)"),
            FieldMap("cca", "cca", "decimal(10,2)"),
            FieldMap("pf", "pf", "decimal(10,2)"),
        ),
    )
    assert emit_schema([binding]) == (
        "CREATE TABLE Emp_Salary (\n"
        "  emp_id VARCHAR(20),\n"
        "  designation VARCHAR(80),\n"
        "  basic DECIMAL(10,2),\n"
        "  da DECIMAL(10,2),\n"
        "  hra DECIMAL(10,2),\n"
        "  cca DECIMAL(10,2),\n"
        "  pf DECIMAL(10,2),\n"
        "  PRIMARY KEY (emp_id)\n"
        ");"
    )


def test_emit_schema_two_column_credentials_table():
    binding = EntityBinding(
        screen_id="login", entity_name="Emp_Credentials", primary_key="emp_id",
        field_maps=(
            FieldMap("username", "emp_id", "text(20)"),
            FieldMap("password", "password", "text(64)"),
        ),
    )
    ddl = emit_schema([binding])
    assert ddl.count("CREATE TABLE") == 1
    assert [l.strip() for l in ddl.splitlines()][1:3] == [
        "emp_id VARCHAR(20),", "password VARCHAR(64),",
    ]


def test_emit_schema_empty_list_is_empty():
    assert emit_schema([]) == ""


def test_emit_schema_rejects_duplicate_entities():
    binding = EntityBinding("s", "Thing", "a", field_maps=(FieldMap("i", "a", "date"),))
    with pytest.raises(GenerationError):
        emit_schema([binding, binding])


# independent DDL re-parser for the faithfulness property (deliberately not
# the one shipped in the package)
_TEST_DDL_RE = re.compile(r"CREATE TABLE (\w+) \(\n(.*?)\);", re.S)


def _reparse(ddl: str) -> list[tuple[str, list[str]]]:
    out = []
    for name, body in _TEST_DDL_RE.findall(ddl):
        cols = []
        for line in body.splitlines():
            line = line.strip().rstrip(",")
            if line and not line.startswith("PRIMARY KEY"):
                cols.append(line.split(" ")[0])
        out.append((name, cols))
    return out


def test_schema_faithfulness_on_random_bindings():
    rng = random.Random(31)
    for _ in range(50):
        bindings = []
        used = set()
        for _ in range(rng.randint(0, 5)):
            entity = rand_ident(rng)
            if entity in used:
                continue
            used.add(entity)
            columns = []
            seen = set()
            for _ in range(rng.randint(1, 8)):
                column = rand_ident(rng)
                if column in seen:
                    continue
                seen.add(column)
                columns.append(column)
            maps = tuple(FieldMap("i" + str(n), c, rand_column_type(rng))
                         for n, c in enumerate(columns))
            bindings.append(EntityBinding("s", entity, columns[0], field_maps=maps))
        ddl = emit_schema(bindings)
        assert _reparse(ddl) == [
            (b.entity_name, [m.column for m in b.field_maps]) for b in bindings
        ]


@pytest.mark.parametrize("column_type,expected", [
    ("text(15)", "VARCHAR(15)"),
    ("integer", "INT"),
    ("decimal(10,2)", "DECIMAL(10,2)"),
    ("date", "DATE"),
])
def test_sql_type_mapping(column_type, expected):
    assert sql_type(column_type) == expected


# -- context ------------------------------------------------------------------


def test_context_fills_prop_defaults_in_schema_order(fixtures):
    ctx = build_context(fixtures.fui_fixture, fixtures.catalog_view)
    login = next(s for s in ctx["screens"] if s["id"] == "login")
    username = next(c for c in login["components"] if c["instance_id"] == "username")
    # authored placeholder, defaulted masked flag, schema order
    assert list(username["props"].items()) == [("placeholder", "Enter username"),
                                               ("masked", "false")]
    password = next(c for c in login["components"] if c["instance_id"] == "password")
    assert password["props"]["masked"] == "true"
    assert password["props"]["placeholder"] == ""


def test_context_is_strings_and_bools_only(fixtures):
    ctx = build_context(fixtures.fui_fixture, fixtures.catalog_view)

    def walk(value):
        if isinstance(value, dict):
            for v in value.values():
                walk(v)
        elif isinstance(value, list):
            for v in value:
                walk(v)
        else:
            assert isinstance(value, (str, bool)), repr(value)

    walk(ctx)
    screen = ctx["screens"][0]
    assert screen["width"] == "800"


def test_context_flags_inputs_and_actions(fixtures):
    ctx = build_context(fixtures.fui_fixture, fixtures.catalog_view)
    login = next(s for s in ctx["screens"] if s["id"] == "login")
    assert login["actions"] == ["login"]
    assert [c["instance_id"] for c in login["input_components"]] == ["username", "password"]
    assert [b["entity"] for b in login["bindings"]] == ["Emp_Credentials"]
    index = next(s for s in ctx["screens"] if s["id"] == "index")
    assert index["has_actions"] is False


# -- write_output ---------------------------------------------------------------


def test_write_output_digests_match_on_disk(tmp_path, hr_result):
    out = tmp_path / "out"
    manifest_path = write_output(hr_result, out)
    manifest = json.loads(manifest_path.read_text())
    for entry in manifest["artifacts"]:
        data = (out / entry["path"]).read_bytes()
        assert hashlib.sha256(data).hexdigest() == entry["sha256"]
        assert len(data) == entry["size"]
    assert manifest_path.read_text(encoding="utf-8") == hr_result.manifest


def test_write_output_refuses_non_empty_directory(tmp_path, hr_result):
    out = tmp_path / "out"
    out.mkdir()
    (out / "occupied.txt").write_text("here first")
    with pytest.raises(NonEmptyOutputError):
        write_output(hr_result, out)
    assert (out / "occupied.txt").read_text() == "here first"


def test_unsafe_artifact_paths_are_rejected_at_construction():
    artifact = GeneratedArtifact("ok.txt", b"x", Provenance("index"))
    for bad in ("../x", "/abs", "a/../b", "", "a\\b", "./x"):
        with pytest.raises(GenerationError):
            GenerationResult(
                artifacts=(artifact, GeneratedArtifact(bad, b"y", Provenance("index"))),
                manifest="{}",
            )


def test_duplicate_artifact_paths_are_rejected():
    a = GeneratedArtifact("same.txt", b"1", Provenance("index"))
    b = GeneratedArtifact("same.txt", b"2", Provenance("schema"))
    with pytest.raises(GenerationError):
        GenerationResult(artifacts=(a, b), manifest="{}")


def test_write_output_cleans_up_on_failure(tmp_path, monkeypatch, hr_result):
    out = tmp_path / "fresh"
    calls = {"n": 0}
    original = GeneratedArtifact.__class__  # noqa: F841 (keep reference semantics clear)

    import pathlib

    real_write_bytes = pathlib.Path.write_bytes

    def flaky(self, data):
        calls["n"] += 1
        if calls["n"] == 5:
            raise OSError("disk full")
        return real_write_bytes(self, data)

    monkeypatch.setattr(pathlib.Path, "write_bytes", flaky)
    with pytest.raises(OSError):
        write_output(hr_result, out)
    monkeypatch.undo()
    assert not out.exists()
