"""Referential validation of FUI documents against a component catalog.

Validation never raises for document problems: every finding becomes an
issue in the report, errors and warnings alike, emitted in a fixed
traversal order (document, then screens and their placements in authored
order, then bindings).  A document with zero error-severity issues is
valid and safe to feed to the generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .model import EntityBinding, FuiDocument, Placement, Screen

if TYPE_CHECKING:  # pragma: no cover
    from .catalog import ComponentDescriptor

ERROR = "error"
WARNING = "warning"

DUP_SCREEN_ID = "DUP_SCREEN_ID"
DUP_INSTANCE_ID = "DUP_INSTANCE_ID"
UNKNOWN_COMPONENT = "UNKNOWN_COMPONENT"
OUT_OF_BOUNDS = "OUT_OF_BOUNDS"
EMPTY_LABEL = "EMPTY_LABEL"
BAD_BINDING_TARGET = "BAD_BINDING_TARGET"
UNKNOWN_PROP = "UNKNOWN_PROP"
BAD_PROP_TYPE = "BAD_PROP_TYPE"
DUP_COLUMN = "DUP_COLUMN"
OVERLAP = "OVERLAP"


@dataclass(frozen=True)
class Issue:
    severity: str
    code: str
    locus: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        """True when the report carries no error-severity issues."""
        return not self.errors

    @property
    def errors(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity == ERROR)

    @property
    def warnings(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity == WARNING)

    def codes(self) -> tuple[str, ...]:
        return tuple(i.code for i in self.issues)


def validate_fui(doc: FuiDocument, catalog) -> ValidationReport:
    """Check a structurally parsed document against catalog head descriptors.

    ``catalog`` is anything with a ``head_or_none(component_id)`` lookup
    (a :class:`~fui_studio.catalog.CatalogStore` or ``CatalogView``).
    """
    issues: list[Issue] = []

    seen_screens: set[str] = set()
    for screen in doc.screens:
        if screen.id in seen_screens:
            issues.append(
                Issue(ERROR, DUP_SCREEN_ID, f"screen[{screen.id}]",
                      f"duplicate screen id {screen.id!r}")
            )
        seen_screens.add(screen.id)

    for screen in doc.screens:
        issues.extend(_validate_screen(screen, catalog))

    for binding in doc.bindings:
        issues.extend(_validate_binding(binding, doc, catalog))

    return ValidationReport(tuple(issues))


def _validate_screen(screen: Screen, catalog) -> Iterable[Issue]:
    issues: list[Issue] = []
    seen: set[str] = set()
    for placement in screen.components:
        locus = f"screen[{screen.id}]/component[{placement.instance_id}]"
        if placement.instance_id in seen:
            issues.append(
                Issue(ERROR, DUP_INSTANCE_ID, locus,
                      f"duplicate instance id {placement.instance_id!r} on screen {screen.id!r}")
            )
        seen.add(placement.instance_id)

        descriptor = catalog.head_or_none(placement.component_ref)
        if descriptor is None:
            issues.append(
                Issue(ERROR, UNKNOWN_COMPONENT, locus,
                      f"component {placement.component_ref!r} is not in the catalog")
            )
        if placement.x + placement.w > screen.width or placement.y + placement.h > screen.height:
            issues.append(
                Issue(ERROR, OUT_OF_BOUNDS, locus,
                      f"box ({placement.x},{placement.y})+{placement.w}x{placement.h} "
                      f"exceeds screen {screen.width}x{screen.height}")
            )
        if not placement.label.strip():
            issues.append(Issue(ERROR, EMPTY_LABEL, locus, "placement has no name"))
        if descriptor is not None:
            issues.extend(_validate_props(placement, descriptor, locus))

    for i, a in enumerate(screen.components):
        for b in screen.components[i + 1:]:
            if a.overlaps(b):
                issues.append(
                    Issue(WARNING, OVERLAP,
                          f"screen[{screen.id}]/component[{a.instance_id}]",
                          f"overlaps component {b.instance_id!r}")
                )
    return issues


def _validate_props(placement: Placement, descriptor: "ComponentDescriptor", locus: str) -> Iterable[Issue]:
    schema = {spec.name: spec for spec in descriptor.prop_schema}
    for name, value in placement.props.items():
        spec = schema.get(name)
        if spec is None:
            yield Issue(ERROR, UNKNOWN_PROP, f"{locus}/prop[{name}]",
                        f"component {descriptor.id!r} has no prop {name!r}")
        elif not spec.accepts(value):
            yield Issue(ERROR, BAD_PROP_TYPE, f"{locus}/prop[{name}]",
                        f"value {value!r} does not satisfy {spec.describe()}")


def _validate_binding(binding: EntityBinding, doc: FuiDocument, catalog) -> Iterable[Issue]:
    issues: list[Issue] = []
    locus = f"binding[{binding.entity_name}]"
    screen = doc.find_screen(binding.screen_id)
    if screen is None:
        issues.append(
            Issue(ERROR, BAD_BINDING_TARGET, locus,
                  f"binding references unknown screen {binding.screen_id!r}")
        )
        return issues

    seen_columns: set[str] = set()
    for field_map in binding.field_maps:
        map_locus = f"{locus}/map[{field_map.column}]"
        if field_map.column in seen_columns:
            issues.append(
                Issue(ERROR, DUP_COLUMN, map_locus,
                      f"duplicate column {field_map.column!r} in binding {binding.entity_name!r}")
            )
        seen_columns.add(field_map.column)

        placement = screen.find(field_map.instance_id)
        if placement is None:
            issues.append(
                Issue(ERROR, BAD_BINDING_TARGET, map_locus,
                      f"no component {field_map.instance_id!r} on screen {binding.screen_id!r}")
            )
            continue
        descriptor = catalog.head_or_none(placement.component_ref)
        if descriptor is not None and not descriptor.is_input:
            issues.append(
                Issue(ERROR, BAD_BINDING_TARGET, map_locus,
                      f"component {field_map.instance_id!r} ({placement.component_ref!r}) "
                      "cannot carry input")
            )

    if binding.primary_key not in {m.column for m in binding.field_maps}:
        issues.append(
            Issue(ERROR, BAD_BINDING_TARGET, locus,
                  f"primary key {binding.primary_key!r} is not among the mapped columns")
        )
    return issues
