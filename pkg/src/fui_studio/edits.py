"""Pure document edits: each application returns a fresh document.

Edits address screens by id and placements by (screen id, instance id).
They refuse unknown targets but never clamp or auto-repair geometry;
a move that leaves the canvas is accepted and later surfaces as an
OUT_OF_BOUNDS validation finding.  The one cascade is remove_screen,
which also drops bindings that referenced the screen and reports them
in the edit result.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Union

from .model import EntityBinding, FuiDocument, Placement, Screen


class EditError(ValueError):
    """The edit addressed a screen or placement that does not exist."""


@dataclass(frozen=True)
class AddScreen:
    screen_id: str
    title: str
    width: int
    height: int


@dataclass(frozen=True)
class RemoveScreen:
    screen_id: str


@dataclass(frozen=True)
class PlaceComponent:
    screen_id: str
    component_ref: str
    x: int
    y: int
    w: int
    h: int
    label: str = ""
    props: dict[str, str] = field(default_factory=dict)
    action: str | None = None


@dataclass(frozen=True)
class MoveComponent:
    screen_id: str
    instance_id: str
    x: int
    y: int


@dataclass(frozen=True)
class ResizeComponent:
    screen_id: str
    instance_id: str
    w: int
    h: int


@dataclass(frozen=True)
class SetProp:
    screen_id: str
    instance_id: str
    name: str
    value: str


@dataclass(frozen=True)
class RemoveComponent:
    screen_id: str
    instance_id: str


@dataclass(frozen=True)
class SetBinding:
    """Replace the binding with the same (screen, entity) pair, or append."""

    binding: EntityBinding


Edit = Union[
    AddScreen, RemoveScreen, PlaceComponent, MoveComponent,
    ResizeComponent, SetProp, RemoveComponent, SetBinding,
]


@dataclass(frozen=True)
class EditResult:
    doc: FuiDocument
    instance_id: str | None = None
    removed_bindings: tuple[EntityBinding, ...] = ()


def apply_edit(doc: FuiDocument, edit: Edit) -> EditResult:
    """Apply one edit and return the resulting document; ``doc`` is unchanged."""
    if isinstance(edit, AddScreen):
        return _add_screen(doc, edit)
    if isinstance(edit, RemoveScreen):
        return _remove_screen(doc, edit)
    if isinstance(edit, PlaceComponent):
        return _place_component(doc, edit)
    if isinstance(edit, MoveComponent):
        return _update_placement(doc, edit.screen_id, edit.instance_id,
                                 lambda p: replace(p, x=edit.x, y=edit.y))
    if isinstance(edit, ResizeComponent):
        return _update_placement(doc, edit.screen_id, edit.instance_id,
                                 lambda p: replace(p, w=edit.w, h=edit.h))
    if isinstance(edit, SetProp):
        return _update_placement(doc, edit.screen_id, edit.instance_id,
                                 lambda p: replace(p, props={**p.props, edit.name: edit.value}))
    if isinstance(edit, RemoveComponent):
        return _remove_component(doc, edit)
    if isinstance(edit, SetBinding):
        return _set_binding(doc, edit)
    raise EditError(f"unknown edit kind {type(edit).__name__}")


def next_instance_id(screen: Screen, component_ref: str) -> str:
    """Smallest unused ``<ref>-<n>`` with n >= 1 on the screen."""
    taken = {p.instance_id for p in screen.components}
    n = 1
    while f"{component_ref}-{n}" in taken:
        n += 1
    return f"{component_ref}-{n}"


def _require_screen(doc: FuiDocument, screen_id: str) -> Screen:
    screen = doc.find_screen(screen_id)
    if screen is None:
        raise EditError(f"no screen {screen_id!r} in document")
    return screen


def _replace_screen(doc: FuiDocument, updated: Screen) -> FuiDocument:
    screens = tuple(updated if s.id == updated.id else s for s in doc.screens)
    return replace(doc, screens=screens)


def _add_screen(doc: FuiDocument, edit: AddScreen) -> EditResult:
    if doc.find_screen(edit.screen_id) is not None:
        raise EditError(f"screen {edit.screen_id!r} already exists")
    screen = Screen(id=edit.screen_id, title=edit.title, width=edit.width, height=edit.height)
    return EditResult(replace(doc, screens=doc.screens + (screen,)))


def _remove_screen(doc: FuiDocument, edit: RemoveScreen) -> EditResult:
    _require_screen(doc, edit.screen_id)
    screens = tuple(s for s in doc.screens if s.id != edit.screen_id)
    dropped = tuple(b for b in doc.bindings if b.screen_id == edit.screen_id)
    kept = tuple(b for b in doc.bindings if b.screen_id != edit.screen_id)
    return EditResult(replace(doc, screens=screens, bindings=kept), removed_bindings=dropped)


def _place_component(doc: FuiDocument, edit: PlaceComponent) -> EditResult:
    screen = _require_screen(doc, edit.screen_id)
    instance_id = next_instance_id(screen, edit.component_ref)
    placement = Placement(
        instance_id=instance_id,
        component_ref=edit.component_ref,
        x=edit.x, y=edit.y, w=edit.w, h=edit.h,
        label=edit.label,
        props=dict(edit.props),
        action=edit.action,
    )
    updated = replace(screen, components=screen.components + (placement,))
    return EditResult(_replace_screen(doc, updated), instance_id=instance_id)


def _update_placement(doc, screen_id, instance_id, transform) -> EditResult:
    screen = _require_screen(doc, screen_id)
    if screen.find(instance_id) is None:
        raise EditError(f"no component {instance_id!r} on screen {screen_id!r}")
    components = tuple(
        transform(p) if p.instance_id == instance_id else p for p in screen.components
    )
    return EditResult(_replace_screen(doc, replace(screen, components=components)))


def _remove_component(doc: FuiDocument, edit: RemoveComponent) -> EditResult:
    screen = _require_screen(doc, edit.screen_id)
    if screen.find(edit.instance_id) is None:
        raise EditError(f"no component {edit.instance_id!r} on screen {edit.screen_id!r}")
    components = tuple(p for p in screen.components if p.instance_id != edit.instance_id)
    return EditResult(_replace_screen(doc, replace(screen, components=components)))


def _set_binding(doc: FuiDocument, edit: SetBinding) -> EditResult:
    binding = edit.binding
    _require_screen(doc, binding.screen_id)
    key = (binding.screen_id, binding.entity_name)
    bindings = list(doc.bindings)
    for i, existing in enumerate(bindings):
        if (existing.screen_id, existing.entity_name) == key:
            bindings[i] = binding
            break
    else:
        bindings.append(binding)
    return EditResult(replace(doc, bindings=tuple(bindings)))
