"""Template packs: a named, versioned set of templates plus static files.

On disk a pack is a directory holding ``pack.json`` (name, version,
target_label, and a role -> {source, output} template map), template
bodies under ``templates/``, and files under ``static/`` that are copied
into the generated tree verbatim (the ``static/`` prefix is stripped).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .model import check_slug
from .template_engine import TemplateAst, TemplateSyntaxError, parse_template

ROLE_VIEW = "view"
ROLE_HANDLER = "handler"
ROLE_DAO_BASE = "dao_base"
ROLE_DAO_ENTITY = "dao_entity"
ROLE_SCHEMA = "schema"
ROLE_INDEX = "index"
ROLES = (ROLE_VIEW, ROLE_HANDLER, ROLE_DAO_BASE, ROLE_DAO_ENTITY, ROLE_SCHEMA, ROLE_INDEX)

# Which {placeholder} names each role's output pattern may use.
_ROLE_PLACEHOLDERS = {
    ROLE_VIEW: {"screen_id", "project"},
    ROLE_HANDLER: {"screen_id", "project"},
    ROLE_DAO_ENTITY: {"entity_name", "project"},
    ROLE_DAO_BASE: {"project"},
    ROLE_SCHEMA: {"project"},
    ROLE_INDEX: {"project"},
}

_PLACEHOLDER_RE = re.compile(r"\{([^{}]*)\}")


class PackError(Exception):
    """The pack directory is missing, malformed, or self-inconsistent."""


@dataclass(frozen=True)
class Template:
    role: str
    path_pattern: str
    body: str
    ast: TemplateAst = field(compare=False, repr=False, default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise PackError(f"unknown template role {self.role!r}")
        allowed = _ROLE_PLACEHOLDERS[self.role]
        for match in _PLACEHOLDER_RE.finditer(self.path_pattern):
            if match.group(1) not in allowed:
                raise PackError(
                    f"{self.role} output pattern {self.path_pattern!r} uses "
                    f"placeholder {{{match.group(1)}}}; allowed: {sorted(allowed)}"
                )
        if self.ast is None:
            try:
                object.__setattr__(self, "ast", parse_template(self.body))
            except TemplateSyntaxError as exc:
                raise PackError(f"{self.role} template does not parse: {exc}") from exc

    def output_path(self, **values: str) -> str:
        return self.path_pattern.format(**values)


@dataclass(frozen=True)
class StaticFile:
    rel_path: str
    data: bytes


@dataclass(frozen=True)
class TemplatePack:
    name: str
    version: int
    target_label: str
    templates: tuple[Template, ...] = ()
    static_files: tuple[StaticFile, ...] = ()

    def __post_init__(self) -> None:
        check_slug(self.name, "pack name")
        if not isinstance(self.version, int) or isinstance(self.version, bool) or self.version < 1:
            raise PackError(f"pack version must be an integer >= 1, got {self.version!r}")
        object.__setattr__(self, "templates", tuple(self.templates))
        object.__setattr__(self, "static_files", tuple(self.static_files))
        roles = [t.role for t in self.templates]
        if len(set(roles)) != len(roles):
            raise PackError("at most one template per role")
        rel_paths = [s.rel_path for s in self.static_files]
        if len(set(rel_paths)) != len(rel_paths):
            raise PackError("static file paths must be unique")

    def template(self, role: str) -> Template | None:
        for template in self.templates:
            if template.role == role:
                return template
        return None


def load_pack(root: Path | str) -> TemplatePack:
    """Load and parse a pack directory; fails fast on any defect."""
    root = Path(root)
    manifest_path = root / "pack.json"
    if not manifest_path.is_file():
        raise PackError(f"no pack.json in {root}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PackError(f"unreadable pack.json in {root}: {exc}") from exc

    required = {"name", "version", "target_label", "templates"}
    missing = sorted(required - set(manifest))
    if missing:
        raise PackError(f"pack.json missing key(s): {missing}")
    unknown = sorted(set(manifest) - required)
    if unknown:
        raise PackError(f"pack.json has unknown key(s): {unknown}")

    templates = []
    entries = manifest["templates"]
    if not isinstance(entries, dict):
        raise PackError("pack.json templates must be a role -> {source, output} map")
    for role in sorted(entries, key=lambda r: ROLES.index(r) if r in ROLES else len(ROLES)):
        entry = entries[role]
        if role not in ROLES:
            raise PackError(f"unknown template role {role!r} in pack.json")
        if not isinstance(entry, dict) or set(entry) != {"source", "output"}:
            raise PackError(f"template entry for {role!r} must map source and output")
        source = root / "templates" / entry["source"]
        if not source.is_file():
            raise PackError(f"missing template body {source}")
        templates.append(
            Template(role=role, path_pattern=entry["output"],
                     body=source.read_text(encoding="utf-8"))
        )

    static_files = []
    static_root = root / "static"
    if static_root.is_dir():
        for path in sorted(static_root.rglob("*")):
            if path.is_file():
                static_files.append(
                    StaticFile(path.relative_to(static_root).as_posix(), path.read_bytes())
                )

    return TemplatePack(
        name=manifest["name"],
        version=manifest["version"],
        target_label=manifest["target_label"],
        templates=tuple(templates),
        static_files=tuple(static_files),
    )
