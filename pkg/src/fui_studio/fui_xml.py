"""Strict parsing and canonical serialization of the FUI XML format.

The on-disk format is frozen: root ``<fui version project>`` containing
``<screen id title width height>`` elements (each holding ``<component
ref id x y w h label action?>`` with nested ``<prop name value/>``),
followed by ``<binding screen entity pk>`` elements holding ``<map
component column type/>``.

Parsing is strict: unknown elements or attributes, missing required
attributes, malformed numbers/slugs, text content, and out-of-order
children are all rejected.  Serialization emits one canonical byte form
(fixed attribute order, 2-space indent, LF, UTF-8 without BOM), so
``parse_fui(serialize_fui(doc))`` is the identity up to structural
equality and repeated calls are byte-identical.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from .model import FORMAT_VERSION, EntityBinding, FieldMap, FuiDocument, Placement, Screen


class FuiParseError(ValueError):
    """Input text could not be turned into a document."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class FuiSyntaxError(FuiParseError):
    """The input is not well-formed XML; carries line and column."""


class FuiSchemaError(FuiParseError):
    """Well-formed XML that does not match the FUI schema."""


class FuiVersionError(FuiParseError):
    """Document declares a format version this reader does not support."""


_INT_RE = re.compile(r"-?[0-9]+\Z")

_FUI_ATTRS = ("version", "project")
_SCREEN_ATTRS = ("id", "title", "width", "height")
_COMPONENT_ATTRS = ("ref", "id", "x", "y", "w", "h", "label")
_PROP_ATTRS = ("name", "value")
_BINDING_ATTRS = ("screen", "entity", "pk")
_MAP_ATTRS = ("component", "column", "type")


def parse_fui(xml_text: str) -> FuiDocument:
    """Parse FUI XML text into a document, preserving authored order."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position
        raise FuiSyntaxError(
            f"XML syntax error at line {line}, column {column}: {exc.msg if hasattr(exc, 'msg') else exc}",
            line=line,
            column=column,
        ) from exc

    if root.tag != "fui":
        raise FuiSchemaError(f"root element must be <fui>, got <{root.tag}>")
    _check_attrs(root, _FUI_ATTRS)
    _reject_text(root)

    version = _int_attr(root, "version")
    if version != FORMAT_VERSION:
        raise FuiVersionError(
            f"unsupported FUI version {version} (supported: {FORMAT_VERSION})"
        )
    project = root.attrib["project"]

    screens: list[Screen] = []
    bindings: list[EntityBinding] = []
    for child in root:
        if child.tag == "screen":
            if bindings:
                raise FuiSchemaError("<screen> elements must precede <binding> elements")
            screens.append(_parse_screen(child))
        elif child.tag == "binding":
            bindings.append(_parse_binding(child))
        else:
            raise FuiSchemaError(f"unknown element <{child.tag}> under <fui>")

    return _build(FuiDocument, version=version, project=project,
                  screens=tuple(screens), bindings=tuple(bindings))


def _parse_screen(elem: ET.Element) -> Screen:
    _check_attrs(elem, _SCREEN_ATTRS)
    _reject_text(elem)
    components = []
    for child in elem:
        if child.tag != "component":
            raise FuiSchemaError(f"unknown element <{child.tag}> under <screen>")
        components.append(_parse_component(child))
    return _build(
        Screen,
        id=elem.attrib["id"],
        title=elem.attrib["title"],
        width=_int_attr(elem, "width"),
        height=_int_attr(elem, "height"),
        components=tuple(components),
    )


def _parse_component(elem: ET.Element) -> Placement:
    _check_attrs(elem, _COMPONENT_ATTRS, optional=("action",))
    _reject_text(elem)
    props: dict[str, str] = {}
    for child in elem:
        if child.tag != "prop":
            raise FuiSchemaError(f"unknown element <{child.tag}> under <component>")
        _check_attrs(child, _PROP_ATTRS)
        _reject_text(child)
        if len(child) > 0:
            raise FuiSchemaError("<prop> must be empty")
        name = child.attrib["name"]
        if name in props:
            raise FuiSchemaError(f"duplicate prop name {name!r} on component {elem.attrib.get('id')!r}")
        props[name] = child.attrib["value"]
    return _build(
        Placement,
        instance_id=elem.attrib["id"],
        component_ref=elem.attrib["ref"],
        x=_int_attr(elem, "x"),
        y=_int_attr(elem, "y"),
        w=_int_attr(elem, "w"),
        h=_int_attr(elem, "h"),
        label=elem.attrib["label"],
        props=props,
        action=elem.attrib.get("action"),
    )


def _parse_binding(elem: ET.Element) -> EntityBinding:
    _check_attrs(elem, _BINDING_ATTRS)
    _reject_text(elem)
    maps = []
    for child in elem:
        if child.tag != "map":
            raise FuiSchemaError(f"unknown element <{child.tag}> under <binding>")
        _check_attrs(child, _MAP_ATTRS)
        _reject_text(child)
        if len(child) > 0:
            raise FuiSchemaError("<map> must be empty")
        maps.append(
            _build(
                FieldMap,
                instance_id=child.attrib["component"],
                column=child.attrib["column"],
                column_type=child.attrib["type"],
            )
        )
    return _build(
        EntityBinding,
        screen_id=elem.attrib["screen"],
        entity_name=elem.attrib["entity"],
        primary_key=elem.attrib["pk"],
        field_maps=tuple(maps),
    )


def _build(cls, **kwargs):
    # Constructor invariant failures are schema violations at the parse boundary.
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise FuiSchemaError(str(exc)) from exc


def _check_attrs(elem: ET.Element, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> None:
    unknown = sorted(set(elem.attrib) - set(required) - set(optional))
    if unknown:
        raise FuiSchemaError(f"unknown attribute(s) {unknown} on <{elem.tag}>")
    missing = [name for name in required if name not in elem.attrib]
    if missing:
        raise FuiSchemaError(f"missing required attribute(s) {missing} on <{elem.tag}>")


def _reject_text(elem: ET.Element) -> None:
    if elem.text is not None and elem.text.strip():
        raise FuiSchemaError(f"unexpected text content in <{elem.tag}>")
    for child in elem:
        if child.tail is not None and child.tail.strip():
            raise FuiSchemaError(f"unexpected text content in <{elem.tag}>")


def _int_attr(elem: ET.Element, name: str) -> int:
    raw = elem.attrib[name]
    if not _INT_RE.fullmatch(raw):
        raise FuiSchemaError(f"attribute {name!r} on <{elem.tag}> must be an integer, got {raw!r}")
    return int(raw)


def _esc(value: str) -> str:
    """Escape an attribute value; tab/newline/CR become character references
    so they survive attribute-value normalization on re-parse."""
    value = value.replace("&", "&amp;")
    value = value.replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    return value.replace("\t", "&#9;").replace("\n", "&#10;").replace("\r", "&#13;")


def serialize_fui(doc: FuiDocument) -> str:
    """Render the canonical text form of a document.

    Output is a pure function of the document value: repeated calls and
    separate processes produce identical bytes.
    """
    if not isinstance(doc, FuiDocument):
        raise ValueError(f"expected FuiDocument, got {type(doc).__name__}")
    lines = [f'<fui version="{doc.version}" project="{_esc(doc.project)}">']
    for screen in doc.screens:
        lines.extend(_screen_lines(screen))
    for binding in doc.bindings:
        lines.extend(_binding_lines(binding))
    lines.append("</fui>")
    return "\n".join(lines) + "\n"


def _screen_lines(screen: Screen) -> list[str]:
    head = (
        f'  <screen id="{_esc(screen.id)}" title="{_esc(screen.title)}"'
        f' width="{screen.width}" height="{screen.height}"'
    )
    if not screen.components:
        return [head + "/>"]
    lines = [head + ">"]
    for placement in screen.components:
        lines.extend(_component_lines(placement))
    lines.append("  </screen>")
    return lines


def _component_lines(p: Placement) -> list[str]:
    head = (
        f'    <component ref="{_esc(p.component_ref)}" id="{_esc(p.instance_id)}"'
        f' x="{p.x}" y="{p.y}" w="{p.w}" h="{p.h}" label="{_esc(p.label)}"'
    )
    if p.action is not None:
        head += f' action="{_esc(p.action)}"'
    if not p.props:
        return [head + "/>"]
    lines = [head + ">"]
    for name, value in p.props.items():
        lines.append(f'      <prop name="{_esc(name)}" value="{_esc(value)}"/>')
    lines.append("    </component>")
    return lines


def _binding_lines(binding: EntityBinding) -> list[str]:
    head = (
        f'  <binding screen="{_esc(binding.screen_id)}" entity="{_esc(binding.entity_name)}"'
        f' pk="{_esc(binding.primary_key)}"'
    )
    if not binding.field_maps:
        return [head + "/>"]
    lines = [head + ">"]
    for m in binding.field_maps:
        lines.append(
            f'    <map component="{_esc(m.instance_id)}" column="{_esc(m.column)}"'
            f' type="{_esc(m.column_type)}"/>'
        )
    lines.append("  </binding>")
    return lines
