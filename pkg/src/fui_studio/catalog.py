"""Versioned component catalog with taxonomy search and reuse statistics.

Descriptors live on disk as ``catalog/<id>/<version>.json`` under the
store root, one immutable file per version, with reuse counters in
``catalog/stats.json`` and recorded project documents under
``projects/<slug>.fui.xml``.  Everything is human-diffable text; writes
go through an atomic replace so readers only ever observe committed
states.  One writer per store root; any number of concurrent readers.
"""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from .model import FuiDocument, check_slug, check_text

GENERAL_PURPOSE = "general_purpose"
DOMAIN_SPECIFIC = "domain_specific"
PRODUCT_SPECIFIC = "product_specific"
CATEGORIES = (GENERAL_PURPOSE, DOMAIN_SPECIFIC, PRODUCT_SPECIFIC)

PROP_TYPES = ("string", "int", "bool", "enum")

# Components carrying this hook feed values into handlers and entity
# bindings; everything else is presentation-only.
INPUT_HOOK = "handler-field"

_INT_VALUE_RE = re.compile(r"-?[0-9]+\Z")


class CatalogError(Exception):
    """Store-level failure: unreadable root, corrupt index, bad descriptor file."""


class NoChangeError(CatalogError):
    """Registration rejected because it is identical to the current head."""


class InvalidDocumentError(CatalogError):
    """record_reuse refused a document that does not validate cleanly."""

    def __init__(self, report):
        super().__init__("document does not validate against this catalog")
        self.report = report


@dataclass(frozen=True)
class PropSpec:
    """One entry of a descriptor's property schema."""

    name: str
    type: str
    values: tuple[str, ...] = ()
    default: str | None = None

    def __post_init__(self) -> None:
        check_slug(self.name, "prop name")
        if self.type not in PROP_TYPES:
            raise ValueError(f"prop {self.name!r}: unknown type {self.type!r}")
        object.__setattr__(self, "values", tuple(self.values))
        if self.type == "enum":
            if not self.values:
                raise ValueError(f"enum prop {self.name!r} must list at least one value")
            if len(set(self.values)) != len(self.values):
                raise ValueError(f"enum prop {self.name!r} lists duplicate values")
            for value in self.values:
                check_text(value, f"enum value of prop {self.name!r}")
        elif self.values:
            raise ValueError(f"prop {self.name!r}: only enum props may list values")
        if self.default is not None:
            check_text(self.default, f"default of prop {self.name!r}")
            if not self.accepts(self.default):
                raise ValueError(
                    f"default {self.default!r} of prop {self.name!r} fails its own type check"
                )

    def accepts(self, value: str) -> bool:
        """Whether a placement-supplied string satisfies this spec."""
        if self.type == "string":
            return True
        if self.type == "int":
            return bool(_INT_VALUE_RE.fullmatch(value))
        if self.type == "bool":
            return value in ("true", "false")
        return value in self.values

    def describe(self) -> str:
        if self.type == "enum":
            return "enum(" + ", ".join(self.values) + ")"
        return self.type


@dataclass(frozen=True)
class ComponentDescriptor:
    """Catalog entry: identity, reuse taxonomy, property schema, template hooks."""

    id: str
    name: str
    category: str
    domain_tags: frozenset[str] = frozenset()
    prop_schema: tuple[PropSpec, ...] = ()
    template_hooks: tuple[str, ...] = ()
    version: int = 1

    def __post_init__(self) -> None:
        check_slug(self.id, "component id")
        check_text(self.name, "component name")
        if not self.name.strip():
            raise ValueError("component name must be non-empty")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        object.__setattr__(self, "domain_tags", frozenset(self.domain_tags))
        for tag in self.domain_tags:
            check_slug(tag, "domain tag")
        if self.category == DOMAIN_SPECIFIC and not self.domain_tags:
            raise ValueError("domain_specific components must name at least one domain tag")
        object.__setattr__(self, "prop_schema", tuple(self.prop_schema))
        names = [spec.name for spec in self.prop_schema]
        if len(set(names)) != len(names):
            raise ValueError(f"component {self.id!r} declares duplicate prop names")
        object.__setattr__(self, "template_hooks", tuple(self.template_hooks))
        for hook in self.template_hooks:
            check_slug(hook, "template hook")
        if len(set(self.template_hooks)) != len(self.template_hooks):
            raise ValueError(f"component {self.id!r} declares duplicate template hooks")
        if not isinstance(self.version, int) or isinstance(self.version, bool) or self.version < 1:
            raise ValueError(f"component version must be an integer >= 1, got {self.version!r}")

    @property
    def is_input(self) -> bool:
        return INPUT_HOOK in self.template_hooks

    def prop_spec(self, name: str) -> PropSpec | None:
        for spec in self.prop_schema:
            if spec.name == name:
                return spec
        return None


def descriptor_to_dict(descriptor: ComponentDescriptor) -> dict:
    """Stable JSON form; key order is part of the file format."""
    out: dict = {
        "id": descriptor.id,
        "name": descriptor.name,
        "category": descriptor.category,
        "domain_tags": sorted(descriptor.domain_tags),
        "prop_schema": [],
        "template_hooks": list(descriptor.template_hooks),
        "version": descriptor.version,
    }
    for spec in descriptor.prop_schema:
        entry: dict = {"name": spec.name, "type": spec.type}
        if spec.type == "enum":
            entry["values"] = list(spec.values)
        if spec.default is not None:
            entry["default"] = spec.default
        out["prop_schema"].append(entry)
    return out


def descriptor_from_dict(data: Mapping, *, require_version: bool = True) -> ComponentDescriptor:
    if not isinstance(data, Mapping):
        raise ValueError("descriptor must be a JSON object")
    allowed = {"id", "name", "category", "domain_tags", "prop_schema", "template_hooks", "version"}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ValueError(f"unknown descriptor key(s): {unknown}")
    required = allowed if require_version else allowed - {"version"}
    missing = sorted(required - set(data))
    if missing:
        raise ValueError(f"missing descriptor key(s): {missing}")

    prop_schema = []
    for raw in data["prop_schema"]:
        if not isinstance(raw, Mapping):
            raise ValueError("prop_schema entries must be objects")
        extra = sorted(set(raw) - {"name", "type", "values", "default"})
        if extra:
            raise ValueError(f"unknown prop_schema key(s): {extra}")
        prop_schema.append(
            PropSpec(
                name=raw.get("name", ""),
                type=raw.get("type", ""),
                values=tuple(raw.get("values", ())),
                default=raw.get("default"),
            )
        )
    return ComponentDescriptor(
        id=data["id"],
        name=data["name"],
        category=data["category"],
        domain_tags=frozenset(data["domain_tags"]),
        prop_schema=tuple(prop_schema),
        template_hooks=tuple(data["template_hooks"]),
        version=data.get("version", 1),
    )


def _descriptor_key(descriptor: ComponentDescriptor) -> str:
    """Canonical identity ignoring version, for no-change detection."""
    d = descriptor_to_dict(descriptor)
    d.pop("version")
    return json.dumps(d, sort_keys=True, ensure_ascii=False)


@dataclass(frozen=True)
class ReuseCount:
    placements: int = 0
    projects: int = 0


class CatalogView:
    """Read-only head lookup over an in-memory descriptor set.

    Shares the lookup interface the validator and generator need with
    :class:`CatalogStore`, without requiring a store root on disk.
    """

    def __init__(self, descriptors: Iterable[ComponentDescriptor]):
        heads: dict[str, ComponentDescriptor] = {}
        for descriptor in descriptors:
            current = heads.get(descriptor.id)
            if current is None or descriptor.version > current.version:
                heads[descriptor.id] = descriptor
        self._heads = heads

    def head_or_none(self, component_id: str) -> ComponentDescriptor | None:
        return self._heads.get(component_id)

    def heads(self) -> list[ComponentDescriptor]:
        return [self._heads[cid] for cid in sorted(self._heads)]


def search_descriptors(
    heads: Iterable[ComponentDescriptor],
    *,
    text: str | None = None,
    category: str | None = None,
    domain_tag: str | None = None,
) -> list[ComponentDescriptor]:
    """Filter head descriptors; results ordered by id ascending."""
    results = []
    needle = text.lower() if text else None
    for descriptor in heads:
        if needle is not None and needle not in descriptor.id.lower() \
                and needle not in descriptor.name.lower():
            continue
        if category is not None and descriptor.category != category:
            continue
        if domain_tag is not None and domain_tag not in descriptor.domain_tags:
            continue
        results.append(descriptor)
    results.sort(key=lambda d: d.id)
    return results


class CatalogStore:
    """Directory-backed component store; see module docstring for layout."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self._lock = threading.Lock()
        self._index: dict[str, list[int]] = {}
        self._stats: dict[str, ReuseCount] = {}
        self._cache: dict[tuple[str, int], ComponentDescriptor] = {}

    # -- lifecycle -----------------------------------------------------

    @classmethod
    def open(cls, root: Path | str, *, create: bool = False) -> "CatalogStore":
        store = cls(Path(root))
        catalog_dir = store.root / "catalog"
        if not catalog_dir.is_dir():
            if not create:
                raise CatalogError(f"no catalog store at {store.root}")
            catalog_dir.mkdir(parents=True, exist_ok=True)
        store._load_index()
        store._load_stats()
        return store

    def _load_index(self) -> None:
        index: dict[str, list[int]] = {}
        catalog_dir = self.root / "catalog"
        for entry in sorted(catalog_dir.iterdir()):
            if not entry.is_dir():
                continue
            versions = sorted(
                int(p.stem) for p in entry.glob("*.json") if p.stem.isdigit()
            )
            if not versions:
                continue
            if versions != list(range(1, len(versions) + 1)):
                raise CatalogError(
                    f"component {entry.name!r} has a gap in its version sequence: {versions}"
                )
            index[entry.name] = versions
        self._index = index

    def _load_stats(self) -> None:
        stats_path = self.root / "catalog" / "stats.json"
        if not stats_path.exists():
            self._stats = {}
            return
        try:
            raw = json.loads(stats_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CatalogError(f"unreadable stats file {stats_path}: {exc}") from exc
        stats = {}
        for cid, entry in raw.items():
            stats[cid] = ReuseCount(
                placements=int(entry["placements"]), projects=int(entry["projects"])
            )
        self._stats = stats

    # -- descriptor access ----------------------------------------------

    def ids(self) -> list[str]:
        return sorted(self._index)

    def versions(self, component_id: str) -> list[int]:
        return list(self._index.get(component_id, ()))

    def get(self, component_id: str, version: int) -> ComponentDescriptor:
        key = (component_id, version)
        if key not in self._cache:
            path = self.root / "catalog" / component_id / f"{version}.json"
            try:
                data = json.loads(path.read_text(encoding="utf-8"))
            except OSError as exc:
                raise CatalogError(f"missing descriptor file {path}") from exc
            except json.JSONDecodeError as exc:
                raise CatalogError(f"corrupt descriptor file {path}: {exc}") from exc
            descriptor = descriptor_from_dict(data)
            if descriptor.id != component_id or descriptor.version != version:
                raise CatalogError(f"descriptor file {path} disagrees with its location")
            self._cache[key] = descriptor
        return self._cache[key]

    def head_or_none(self, component_id: str) -> ComponentDescriptor | None:
        versions = self._index.get(component_id)
        if not versions:
            return None
        return self.get(component_id, versions[-1])

    def head(self, component_id: str) -> ComponentDescriptor:
        descriptor = self.head_or_none(component_id)
        if descriptor is None:
            raise CatalogError(f"no component {component_id!r} in catalog")
        return descriptor

    def heads(self) -> list[ComponentDescriptor]:
        return [self.head(cid) for cid in self.ids()]

    # -- operations ------------------------------------------------------

    def register(self, descriptor: ComponentDescriptor) -> int:
        """Persist ``descriptor`` as the next version of its id (1 if new).

        The supplied version field is ignored.  An exact repeat of the
        current head (everything equal apart from version) is rejected
        so re-registration cannot inflate version numbers.
        """
        with self._lock:
            head = self.head_or_none(descriptor.id)
            if head is not None and _descriptor_key(head) == _descriptor_key(descriptor):
                raise NoChangeError(
                    f"component {descriptor.id!r} is unchanged from version {head.version}"
                )
            next_version = (head.version + 1) if head is not None else 1
            stamped = replace(descriptor, version=next_version)
            target_dir = self.root / "catalog" / descriptor.id
            target_dir.mkdir(parents=True, exist_ok=True)
            payload = json.dumps(descriptor_to_dict(stamped), indent=2, ensure_ascii=False) + "\n"
            _atomic_write(target_dir / f"{next_version}.json", payload.encode("utf-8"))
            self._index.setdefault(descriptor.id, []).append(next_version)
            self._cache[(descriptor.id, next_version)] = stamped
            return next_version

    def search(
        self,
        *,
        text: str | None = None,
        category: str | None = None,
        domain_tag: str | None = None,
    ) -> list[ComponentDescriptor]:
        return search_descriptors(self.heads(), text=text, category=category, domain_tag=domain_tag)

    def record_reuse(self, project: str, doc: FuiDocument) -> dict[str, ReuseCount]:
        """Record (or re-record) a project's component usage.

        Re-recording replaces the project's previous contribution, so the
        stats always equal a recount over the stored project documents.
        Returns the per-component delta that was applied.
        """
        from .fui_xml import parse_fui, serialize_fui
        from .validation import validate_fui

        check_slug(project, "project slug")
        report = validate_fui(doc, self)
        if not report.ok:
            raise InvalidDocumentError(report)

        with self._lock:
            projects_dir = self.root / "projects"
            project_path = projects_dir / f"{project}.fui.xml"
            old_counts: dict[str, int] = {}
            if project_path.exists():
                old_doc = parse_fui(project_path.read_text(encoding="utf-8"))
                old_counts = _placement_counts(old_doc)
            new_counts = _placement_counts(doc)

            delta: dict[str, ReuseCount] = {}
            for cid in sorted(set(old_counts) | set(new_counts)):
                d_placements = new_counts.get(cid, 0) - old_counts.get(cid, 0)
                d_projects = int(cid in new_counts) - int(cid in old_counts)
                if d_placements or d_projects:
                    delta[cid] = ReuseCount(placements=d_placements, projects=d_projects)

            stats = dict(self._stats)
            for cid, d in delta.items():
                current = stats.get(cid, ReuseCount())
                updated = ReuseCount(
                    placements=current.placements + d.placements,
                    projects=current.projects + d.projects,
                )
                # all-zero entries are equivalent to absent; keep memory in
                # step with the pruned on-disk form
                if updated == ReuseCount():
                    stats.pop(cid, None)
                else:
                    stats[cid] = updated

            projects_dir.mkdir(parents=True, exist_ok=True)
            _atomic_write(project_path, serialize_fui(doc).encode("utf-8"))
            _atomic_write(self.root / "catalog" / "stats.json", _stats_bytes(stats))
            self._stats = stats
            return delta

    def stats(self) -> dict[str, ReuseCount]:
        return dict(self._stats)

    def project_slugs(self) -> list[str]:
        projects_dir = self.root / "projects"
        if not projects_dir.is_dir():
            return []
        return sorted(p.name[: -len(".fui.xml")] for p in projects_dir.glob("*.fui.xml"))

    def rarely_used_report(self, threshold: int) -> list[tuple[str, int]]:
        """Components placed at most ``threshold`` times, least used first."""
        if threshold < 0:
            raise ValueError("threshold must be >= 0")
        rows = [
            (cid, self._stats.get(cid, ReuseCount()).placements)
            for cid in self.ids()
        ]
        rows = [(cid, placements) for cid, placements in rows if placements <= threshold]
        rows.sort(key=lambda row: (row[1], row[0]))
        return rows


def _placement_counts(doc: FuiDocument) -> dict[str, int]:
    counts: dict[str, int] = {}
    for screen in doc.screens:
        for placement in screen.components:
            counts[placement.component_ref] = counts.get(placement.component_ref, 0) + 1
    return counts


def _stats_bytes(stats: dict[str, ReuseCount]) -> bytes:
    payload = {
        cid: {"placements": c.placements, "projects": c.projects}
        for cid, c in stats.items()
        if c.placements or c.projects
    }
    return (json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)
