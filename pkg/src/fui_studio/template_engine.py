"""Minimal strict text-template engine used by the code generator.

Grammar: literal text, substitutions ``{{dot.path}}``, repetition
``{{#each path}}...{{/each}}`` (inside a section ``{{.}}`` is the current
item and ``{{.field}}`` one of its fields), conditionals
``{{#if path}}...{{/if}}``, and ``\\{{`` for a literal brace pair.

Rendering is strict and pure: a path missing from the context is an
error rather than empty output, sections demand the right value shape,
and output depends on nothing but (template, context).  Context values
are strings, booleans, lists, and string-keyed maps.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

UNTERMINATED_TAG = "UNTERMINATED_TAG"
EMPTY_PATH = "EMPTY_PATH"
BAD_PATH = "BAD_PATH"
UNKNOWN_SECTION = "UNKNOWN_SECTION"
UNEXPECTED_CLOSE = "UNEXPECTED_CLOSE"
MISMATCHED_CLOSE = "MISMATCHED_CLOSE"
UNCLOSED_SECTION = "UNCLOSED_SECTION"

MISSING_PATH = "MISSING_PATH"
TYPE_MISMATCH = "TYPE_MISMATCH"

_SEGMENT_RE = re.compile(r"[A-Za-z0-9_-]+\Z")


class TemplateSyntaxError(ValueError):
    def __init__(self, code: str, message: str, line: int):
        super().__init__(f"{code} at line {line}: {message}")
        self.code = code
        self.line = line


class TemplateRenderError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Path:
    """A dotted lookup; relative paths start at the innermost each-item."""

    segments: tuple[str, ...]
    relative: bool

    def dotted(self) -> str:
        text = ".".join(self.segments)
        return ("." + text) if self.relative else (text or ".")


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class Subst:
    path: Path
    line: int


@dataclass(frozen=True)
class Each:
    path: Path
    body: tuple["Node", ...]
    line: int


@dataclass(frozen=True)
class Cond:
    path: Path
    body: tuple["Node", ...]
    line: int


Node = Union[Literal, Subst, Each, Cond]


@dataclass(frozen=True)
class TemplateAst:
    nodes: tuple[Node, ...]


def parse_template(body: str) -> TemplateAst:
    """Parse template text; raises TemplateSyntaxError with a line number."""
    parser = _Parser(body)
    nodes = parser.parse_nodes()
    if parser.open_sections:
        kind, line = parser.open_sections[-1]
        raise TemplateSyntaxError(UNCLOSED_SECTION, f"{{{{#{kind}}}}} is never closed", line)
    return TemplateAst(tuple(nodes))


class _Parser:
    def __init__(self, body: str):
        self.body = body
        self.pos = 0
        self.open_sections: list[tuple[str, int]] = []

    def _line(self, pos: int) -> int:
        return self.body.count("\n", 0, pos) + 1

    def parse_nodes(self) -> list[Node]:
        """Parse until EOF or until the matching close tag of the enclosing section."""
        nodes: list[Node] = []
        literal: list[str] = []

        def flush() -> None:
            if literal:
                nodes.append(Literal("".join(literal)))
                literal.clear()

        body = self.body
        while self.pos < len(body):
            ch = body[self.pos]
            if ch == "\\" and body.startswith("\\{{", self.pos):
                literal.append("{{")
                self.pos += 3
                continue
            if body.startswith("{{", self.pos):
                tag_start = self.pos
                end = body.find("}}", self.pos + 2)
                if end < 0:
                    raise TemplateSyntaxError(
                        UNTERMINATED_TAG, "'{{' without matching '}}'", self._line(tag_start)
                    )
                inner = body[self.pos + 2: end].strip()
                self.pos = end + 2
                line = self._line(tag_start)

                if inner.startswith("#"):
                    kind, _, raw_path = inner[1:].partition(" ")
                    if kind not in ("each", "if"):
                        raise TemplateSyntaxError(
                            UNKNOWN_SECTION, f"unknown section {{{{#{kind}}}}}", line
                        )
                    path = _parse_path(raw_path.strip(), line)
                    flush()
                    self.open_sections.append((kind, line))
                    inner_nodes = self.parse_nodes()
                    node_cls = Each if kind == "each" else Cond
                    nodes.append(node_cls(path, tuple(inner_nodes), line))
                    continue

                if inner.startswith("/"):
                    kind = inner[1:].strip()
                    if not self.open_sections:
                        raise TemplateSyntaxError(
                            UNEXPECTED_CLOSE, f"{{{{/{kind}}}}} without an open section", line
                        )
                    open_kind, _ = self.open_sections[-1]
                    if kind != open_kind:
                        raise TemplateSyntaxError(
                            MISMATCHED_CLOSE,
                            f"{{{{/{kind}}}}} closes {{{{#{open_kind}}}}}", line,
                        )
                    self.open_sections.pop()
                    flush()
                    return nodes

                path = _parse_path(inner, line)
                flush()
                nodes.append(Subst(path, line))
                continue

            literal.append(ch)
            self.pos += 1

        flush()
        return nodes


def _parse_path(raw: str, line: int) -> Path:
    if not raw:
        raise TemplateSyntaxError(EMPTY_PATH, "empty placeholder path", line)
    relative = raw.startswith(".")
    text = raw[1:] if relative else raw
    if relative and not text:
        return Path((), True)
    segments = text.split(".")
    for segment in segments:
        if not _SEGMENT_RE.fullmatch(segment):
            raise TemplateSyntaxError(
                EMPTY_PATH if not segment else BAD_PATH,
                f"bad path segment {segment!r} in {raw!r}", line,
            )
    return Path(tuple(segments), relative)


Value = Union[str, bool, list, dict]


def render(ast: TemplateAst, ctx: dict) -> str:
    """Render an AST against a context tree; see module docstring for rules."""
    out: list[str] = []
    _render_nodes(ast.nodes, ctx, [], out)
    return "".join(out)


def _render_nodes(nodes: tuple[Node, ...], root: dict, items: list[Value], out: list[str]) -> None:
    for node in nodes:
        if isinstance(node, Literal):
            out.append(node.text)
        elif isinstance(node, Subst):
            value = _resolve(node.path, root, items)
            if isinstance(value, bool):
                out.append("true" if value else "false")
            elif isinstance(value, str):
                out.append(value)
            else:
                raise TemplateRenderError(
                    TYPE_MISMATCH,
                    f"cannot substitute {_shape(value)} at {node.path.dotted()!r}",
                )
        elif isinstance(node, Each):
            value = _resolve(node.path, root, items)
            if not isinstance(value, (list, tuple)):
                raise TemplateRenderError(
                    TYPE_MISMATCH,
                    f"{{{{#each}}}} needs a list at {node.path.dotted()!r}, got {_shape(value)}",
                )
            for item in value:
                items.append(item)
                _render_nodes(node.body, root, items, out)
                items.pop()
        elif isinstance(node, Cond):
            value = _resolve(node.path, root, items)
            if isinstance(value, bool):
                truthy = value
            elif isinstance(value, (str, list, tuple)):
                truthy = len(value) > 0
            else:
                raise TemplateRenderError(
                    TYPE_MISMATCH,
                    f"{{{{#if}}}} cannot test {_shape(value)} at {node.path.dotted()!r}",
                )
            if truthy:
                _render_nodes(node.body, root, items, out)
        else:  # pragma: no cover - parser emits no other node kinds
            raise TemplateRenderError(TYPE_MISMATCH, f"unknown node {node!r}")


def _resolve(path: Path, root: dict, items: list[Value]) -> Value:
    if path.relative:
        if not items:
            raise TemplateRenderError(
                MISSING_PATH, f"{path.dotted()!r} used outside {{{{#each}}}}"
            )
        current: Value = items[-1]
    else:
        current = root
    for segment in path.segments:
        if not isinstance(current, dict) or segment not in current:
            raise TemplateRenderError(MISSING_PATH, f"no value at {path.dotted()!r}")
        current = current[segment]
    return current


def _shape(value: object) -> str:
    if isinstance(value, dict):
        return "a map"
    if isinstance(value, (list, tuple)):
        return "a list"
    return type(value).__name__
