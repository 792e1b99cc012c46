"""Value types for FUI screen-design documents.

Constructors enforce representation invariants: slug and identifier
grammars, geometry domains, and XML-representable text.  Referential
rules that a well-formed file may still break (duplicate ids, boxes
outside the canvas, dangling binding targets) are deliberately *not*
enforced here; the validator reports them instead, so broken-but-parseable
designs stay representable and editable.

All types are immutable values; every operation on them returns a new
document and never mutates its input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

FORMAT_VERSION = 1

_SLUG_RE = re.compile(r"[a-z0-9-]+\Z")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_COLUMN_TYPE_RE = re.compile(
    r"(?:text\((?P<n>[1-9][0-9]*)\)|integer|date|decimal\((?P<p>[1-9][0-9]*),(?P<s>[0-9]+)\))\Z"
)
# Code points XML 1.0 cannot carry at all, not even as character references.
_XML_UNSAFE_RE = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff￾￿]")


def check_slug(value: str, what: str) -> str:
    if not isinstance(value, str) or not _SLUG_RE.fullmatch(value):
        raise ValueError(f"{what} must be a slug ([a-z0-9-]+), got {value!r}")
    return value


def check_ident(value: str, what: str) -> str:
    if not isinstance(value, str) or not _IDENT_RE.fullmatch(value):
        raise ValueError(f"{what} must be an identifier, got {value!r}")
    return value


def check_text(value: str, what: str) -> str:
    if not isinstance(value, str):
        raise ValueError(f"{what} must be a string, got {type(value).__name__}")
    if _XML_UNSAFE_RE.search(value):
        raise ValueError(f"{what} contains characters not representable in XML")
    return value


def check_column_type(value: str, what: str) -> str:
    m = _COLUMN_TYPE_RE.fullmatch(value) if isinstance(value, str) else None
    if m is None:
        raise ValueError(
            f"{what} must be one of text(n), integer, decimal(p,s), date; got {value!r}"
        )
    if m.group("p") is not None and int(m.group("s")) > int(m.group("p")):
        raise ValueError(f"{what}: decimal scale exceeds precision in {value!r}")
    return value


def _check_int(value: int, what: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{what} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{what} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Placement:
    """One component instance dropped on a screen, with explicit geometry.

    Coordinates are non-negative and sizes strictly positive by type;
    whether the box fits its screen is a validation concern.
    """

    instance_id: str
    component_ref: str
    x: int
    y: int
    w: int
    h: int
    label: str
    props: dict[str, str] = field(default_factory=dict)
    action: str | None = None

    def __post_init__(self) -> None:
        check_slug(self.instance_id, "placement instance_id")
        check_slug(self.component_ref, "placement component_ref")
        _check_int(self.x, "placement x", 0)
        _check_int(self.y, "placement y", 0)
        _check_int(self.w, "placement w", 1)
        _check_int(self.h, "placement h", 1)
        check_text(self.label, "placement label")
        props = dict(self.props)
        for name, value in props.items():
            check_slug(name, "prop name")
            check_text(value, f"prop {name!r} value")
        object.__setattr__(self, "props", props)
        if self.action is not None:
            check_slug(self.action, "placement action")

    def overlaps(self, other: "Placement") -> bool:
        """True when the two bounding boxes share interior area (edge contact is not overlap)."""
        return (
            self.x < other.x + other.w
            and other.x < self.x + self.w
            and self.y < other.y + other.h
            and other.y < self.y + self.h
        )


@dataclass(frozen=True)
class Screen:
    id: str
    title: str
    width: int
    height: int
    components: tuple[Placement, ...] = ()

    def __post_init__(self) -> None:
        check_slug(self.id, "screen id")
        check_text(self.title, "screen title")
        _check_int(self.width, "screen width", 1)
        _check_int(self.height, "screen height", 1)
        object.__setattr__(self, "components", tuple(self.components))
        for placement in self.components:
            if not isinstance(placement, Placement):
                raise ValueError("screen components must be Placement values")

    def find(self, instance_id: str) -> Placement | None:
        for placement in self.components:
            if placement.instance_id == instance_id:
                return placement
        return None


@dataclass(frozen=True)
class FieldMap:
    """Maps one input component on the bound screen to a table column."""

    instance_id: str
    column: str
    column_type: str

    def __post_init__(self) -> None:
        check_slug(self.instance_id, "field map component")
        check_ident(self.column, "field map column")
        check_column_type(self.column_type, "field map type")


@dataclass(frozen=True)
class EntityBinding:
    """Maps a screen's input components to a persistent entity's columns."""

    screen_id: str
    entity_name: str
    primary_key: str
    field_maps: tuple[FieldMap, ...] = ()

    def __post_init__(self) -> None:
        check_slug(self.screen_id, "binding screen")
        check_ident(self.entity_name, "binding entity")
        check_ident(self.primary_key, "binding primary key")
        object.__setattr__(self, "field_maps", tuple(self.field_maps))
        for field_map in self.field_maps:
            if not isinstance(field_map, FieldMap):
                raise ValueError("binding field_maps must be FieldMap values")


@dataclass(frozen=True)
class FuiDocument:
    """A complete screen design: ordered screens plus entity bindings."""

    version: int
    project: str
    screens: tuple[Screen, ...] = ()
    bindings: tuple[EntityBinding, ...] = ()

    def __post_init__(self) -> None:
        if self.version != FORMAT_VERSION:
            raise ValueError(
                f"unsupported document version {self.version!r} (supported: {FORMAT_VERSION})"
            )
        check_slug(self.project, "project")
        object.__setattr__(self, "screens", tuple(self.screens))
        object.__setattr__(self, "bindings", tuple(self.bindings))
        for screen in self.screens:
            if not isinstance(screen, Screen):
                raise ValueError("document screens must be Screen values")
        for binding in self.bindings:
            if not isinstance(binding, EntityBinding):
                raise ValueError("document bindings must be EntityBinding values")

    def find_screen(self, screen_id: str) -> Screen | None:
        for screen in self.screens:
            if screen.id == screen_id:
                return screen
        return None
