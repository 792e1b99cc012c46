"""Deterministic generation of a source tree from a document and a pack.

Generation is refused unless the document validates cleanly.  Rendering
is a pure function of (document, catalog heads, pack): artifact bytes,
ordering, and the manifest are byte-identical across runs and hosts, so
the whole pipeline can be locked by golden files.  No timestamps, no
environment reads.
"""

from __future__ import annotations

import hashlib
import json
import re
import shutil
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

from .model import EntityBinding, FuiDocument, _COLUMN_TYPE_RE
from .packs import (
    ROLE_DAO_BASE,
    ROLE_DAO_ENTITY,
    ROLE_HANDLER,
    ROLE_INDEX,
    ROLE_SCHEMA,
    ROLE_VIEW,
    Template,
    TemplatePack,
)
from .template_engine import TemplateRenderError, render
from .validation import ValidationReport, validate_fui

ROLE_STATIC = "static"
# Role-major artifact ordering, template roles first, verbatim files last.
ROLE_ORDER = (ROLE_VIEW, ROLE_HANDLER, ROLE_DAO_BASE, ROLE_DAO_ENTITY,
              ROLE_SCHEMA, ROLE_INDEX, ROLE_STATIC)


class GenerationError(Exception):
    """Generation could not produce a complete, consistent result."""


class ValidationFailedError(GenerationError):
    """The input document has validation errors; nothing was generated."""

    def __init__(self, report: ValidationReport):
        codes = ", ".join(sorted({i.code for i in report.errors}))
        super().__init__(f"document has validation errors ({codes})")
        self.report = report


class NonEmptyOutputError(GenerationError):
    """write_output refuses to touch a directory that already has content."""


@dataclass(frozen=True)
class Provenance:
    role: str
    screen: str | None = None
    entity: str | None = None
    instance_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class GeneratedArtifact:
    rel_path: str
    data: bytes
    provenance: Provenance


@dataclass(frozen=True)
class GenerationResult:
    artifacts: tuple[GeneratedArtifact, ...]
    manifest: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "artifacts", tuple(self.artifacts))
        seen: set[str] = set()
        for artifact in self.artifacts:
            _check_rel_path(artifact.rel_path)
            if artifact.rel_path in seen:
                raise GenerationError(f"duplicate artifact path {artifact.rel_path!r}")
            seen.add(artifact.rel_path)

    def find(self, rel_path: str) -> GeneratedArtifact | None:
        for artifact in self.artifacts:
            if artifact.rel_path == rel_path:
                return artifact
        return None

    def paths(self) -> list[str]:
        return [a.rel_path for a in self.artifacts]


def _check_rel_path(rel_path: str) -> None:
    pure = PurePosixPath(rel_path)
    if (
        not rel_path
        or "\\" in rel_path
        or pure.is_absolute()
        or any(part in ("..", ".", "") for part in pure.parts)
        or rel_path != pure.as_posix()
    ):
        raise GenerationError(f"unsafe artifact path {rel_path!r}")


def sql_type(column_type: str) -> str:
    """Map a field-map column type to its ANSI DDL type."""
    m = _COLUMN_TYPE_RE.fullmatch(column_type)
    if m is None:
        raise GenerationError(f"unknown column type {column_type!r}")
    if m.group("n") is not None:
        return f"VARCHAR({m.group('n')})"
    if m.group("p") is not None:
        return f"DECIMAL({m.group('p')},{m.group('s')})"
    return {"integer": "INT", "date": "DATE"}[column_type]


def emit_schema(bindings: tuple[EntityBinding, ...] | list[EntityBinding]) -> str:
    """DDL for the bound entities: one CREATE TABLE per binding in authored
    order, columns in field-map order, primary-key clause last.

    Returns only the statements (no file header); an empty binding list
    yields the empty string.
    """
    seen: set[str] = set()
    statements = []
    for binding in bindings:
        if binding.entity_name in seen:
            raise GenerationError(f"duplicate entity name {binding.entity_name!r}")
        seen.add(binding.entity_name)
        lines = [f"CREATE TABLE {binding.entity_name} ("]
        for field_map in binding.field_maps:
            lines.append(f"  {field_map.column} {sql_type(field_map.column_type)},")
        lines.append(f"  PRIMARY KEY ({binding.primary_key})")
        lines.append(");")
        statements.append("\n".join(lines))
    return "\n\n".join(statements)


_DDL_TABLE_RE = re.compile(
    r"CREATE TABLE (?P<name>[A-Za-z_][A-Za-z0-9_]*) \((?P<body>.*?)\n\);", re.S
)


def parse_ddl(text: str) -> list[tuple[str, list[str], str | None]]:
    """Re-parse emitted DDL into (table, ordered columns, primary key) rows."""
    tables = []
    for match in _DDL_TABLE_RE.finditer(text):
        columns: list[str] = []
        pk: str | None = None
        for line in match.group("body").strip().splitlines():
            line = line.strip().rstrip(",")
            if line.upper().startswith("PRIMARY KEY"):
                pk = line[line.index("(") + 1: line.index(")")].strip()
            elif line:
                columns.append(line.split()[0])
        tables.append((match.group("name"), columns, pk))
    return tables


def build_context(doc: FuiDocument, catalog) -> dict:
    """Context tree for template rendering; a pure function of the inputs.

    Every leaf is a string or boolean (geometry and versions included),
    so templates never see host-specific number formatting.
    """
    bindings_ctx = [_binding_context(binding) for binding in doc.bindings]
    screens_ctx = []
    for screen in doc.screens:
        components = []
        for p in screen.components:
            descriptor = catalog.head_or_none(p.component_ref)
            props = _resolved_props(p.props, descriptor)
            components.append({
                "instance_id": p.instance_id,
                "ref": p.component_ref,
                "name": descriptor.name if descriptor else p.component_ref,
                "category": descriptor.category if descriptor else "",
                "x": str(p.x), "y": str(p.y), "w": str(p.w), "h": str(p.h),
                "label": p.label,
                "action": p.action or "",
                "input": bool(descriptor and descriptor.is_input),
                "props": props,
                "prop_items": [{"name": n, "value": v} for n, v in props.items()],
            })
        actions: list[str] = []
        for p in screen.components:
            if p.action and p.action not in actions:
                actions.append(p.action)
        screens_ctx.append({
            "id": screen.id,
            "title": screen.title,
            "width": str(screen.width),
            "height": str(screen.height),
            "components": components,
            "actions": actions,
            "has_actions": bool(actions),
            "action_components": [c for c in components if c["action"]],
            "input_components": [c for c in components if c["input"]],
            "bindings": [b for b in bindings_ctx if b["screen"] == screen.id],
        })
    return {
        "project": doc.project,
        "version": str(doc.version),
        "screens": screens_ctx,
        "bindings": bindings_ctx,
        "ddl": emit_schema(doc.bindings),
    }


def _binding_context(binding: EntityBinding) -> dict:
    columns = [m.column for m in binding.field_maps]
    return {
        "entity": binding.entity_name,
        "screen": binding.screen_id,
        "pk": binding.primary_key,
        "dao_class": f"{binding.entity_name}DAO",
        "record_class": f"{binding.entity_name}Record",
        "column_list": ", ".join(columns),
        "value_list": ", ".join("?" for _ in columns),
        "columns": [
            {
                "column": m.column,
                "type": m.column_type,
                "sql_type": sql_type(m.column_type),
                "instance_id": m.instance_id,
            }
            for m in binding.field_maps
        ],
    }


def _resolved_props(placement_props: dict[str, str], descriptor) -> dict[str, str]:
    """Schema-ordered props with defaults filled; unknown authored props last."""
    resolved: dict[str, str] = {}
    if descriptor is not None:
        for spec in descriptor.prop_schema:
            if spec.name in placement_props:
                resolved[spec.name] = placement_props[spec.name]
            elif spec.default is not None:
                resolved[spec.name] = spec.default
    for name, value in placement_props.items():
        if name not in resolved:
            resolved[name] = value
    return resolved


def generate(doc: FuiDocument, pack: TemplatePack, catalog) -> GenerationResult:
    """Run the document through the pack; see module docstring for guarantees."""
    report = validate_fui(doc, catalog)
    if not report.ok:
        raise ValidationFailedError(report)

    ctx = build_context(doc, catalog)
    ctx["pack"] = {
        "name": pack.name,
        "version": str(pack.version),
        "label": pack.target_label,
    }

    artifacts: list[GeneratedArtifact] = []

    def emit(template: Template, extra: dict, path_values: dict[str, str],
             provenance: Provenance) -> None:
        rel_path = template.output_path(**path_values)
        try:
            text = render(template.ast, {**ctx, **extra})
        except TemplateRenderError as exc:
            raise GenerationError(
                f"cannot render {rel_path!r} ({template.role} template): {exc}"
            ) from exc
        artifacts.append(GeneratedArtifact(rel_path, text.encode("utf-8"), provenance))

    view = pack.template(ROLE_VIEW)
    if view is not None:
        for screen, screen_ctx in zip(doc.screens, ctx["screens"]):
            emit(view, {"screen": screen_ctx},
                 {"screen_id": screen.id, "project": doc.project},
                 Provenance(ROLE_VIEW, screen=screen.id,
                            instance_ids=tuple(p.instance_id for p in screen.components)))

    handler = pack.template(ROLE_HANDLER)
    if handler is not None:
        for screen, screen_ctx in zip(doc.screens, ctx["screens"]):
            if not screen_ctx["has_actions"]:
                continue
            involved = tuple(
                c["instance_id"]
                for c in screen_ctx["components"]
                if c["action"] or c["input"]
            )
            emit(handler, {"screen": screen_ctx},
                 {"screen_id": screen.id, "project": doc.project},
                 Provenance(ROLE_HANDLER, screen=screen.id, instance_ids=involved))

    # the shared superclass is support code for entity DAOs; without
    # bindings there is nothing for it to support
    dao_base = pack.template(ROLE_DAO_BASE)
    if dao_base is not None and doc.bindings:
        emit(dao_base, {}, {"project": doc.project}, Provenance(ROLE_DAO_BASE))

    dao_entity = pack.template(ROLE_DAO_ENTITY)
    if dao_entity is not None:
        for binding, binding_ctx in zip(doc.bindings, ctx["bindings"]):
            emit(dao_entity, {"binding": binding_ctx},
                 {"entity_name": binding.entity_name, "project": doc.project},
                 Provenance(ROLE_DAO_ENTITY, screen=binding.screen_id,
                            entity=binding.entity_name,
                            instance_ids=tuple(m.instance_id for m in binding.field_maps)))

    schema = pack.template(ROLE_SCHEMA)
    if schema is not None:
        emit(schema, {}, {"project": doc.project}, Provenance(ROLE_SCHEMA))

    index = pack.template(ROLE_INDEX)
    if index is not None:
        emit(index, {}, {"project": doc.project}, Provenance(ROLE_INDEX))

    generated_paths = {a.rel_path for a in artifacts}
    for static in pack.static_files:
        if static.rel_path in generated_paths:
            raise GenerationError(
                f"static file {static.rel_path!r} collides with a generated artifact"
            )
        artifacts.append(GeneratedArtifact(static.rel_path, static.data,
                                           Provenance(ROLE_STATIC)))

    artifacts.sort(key=lambda a: (ROLE_ORDER.index(a.provenance.role), a.rel_path))
    manifest = _manifest_text(artifacts, pack, doc.project)
    return GenerationResult(tuple(artifacts), manifest)


def _manifest_text(artifacts: list[GeneratedArtifact], pack: TemplatePack, project: str) -> str:
    payload = {
        "project": project,
        "pack": {"name": pack.name, "version": pack.version},
        "artifacts": [
            {
                "path": a.rel_path,
                "size": len(a.data),
                "sha256": hashlib.sha256(a.data).hexdigest(),
            }
            for a in artifacts
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_output(result: GenerationResult, out_dir: Path | str) -> Path:
    """Write artifacts plus ``manifest.json`` (written last) into a fresh
    directory; refuses a non-empty target and removes partial output on failure."""
    out_dir = Path(out_dir)
    for artifact in result.artifacts:
        _check_rel_path(artifact.rel_path)

    created_dir = False
    if out_dir.exists():
        if not out_dir.is_dir():
            raise GenerationError(f"output path {out_dir} is not a directory")
        if any(out_dir.iterdir()):
            raise NonEmptyOutputError(f"output directory {out_dir} is not empty")
    else:
        out_dir.mkdir(parents=True)
        created_dir = True

    written: list[Path] = []
    try:
        for artifact in result.artifacts:
            target = out_dir / artifact.rel_path
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(artifact.data)
            written.append(target)
        manifest_path = out_dir / "manifest.json"
        manifest_path.write_bytes(result.manifest.encode("utf-8"))
        return manifest_path
    except BaseException:
        if created_dir:
            shutil.rmtree(out_dir, ignore_errors=True)
        else:
            for path in written:
                path.unlink(missing_ok=True)
        raise
