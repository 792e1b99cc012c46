"""Component-reuse studio: screen documents, catalog, and code generation.

The pipeline: design screens as an XML FUI document, validate it against
the component catalog, then render it through a template pack into a
deterministic source tree with a provenance manifest.
"""

from .catalog import (
    CatalogStore,
    CatalogView,
    ComponentDescriptor,
    PropSpec,
    ReuseCount,
)
from .codegen import (
    GeneratedArtifact,
    GenerationError,
    GenerationResult,
    ValidationFailedError,
    build_context,
    emit_schema,
    generate,
    write_output,
)
from .edits import Edit, EditError, EditResult, apply_edit
from .fui_xml import FuiParseError, FuiSchemaError, FuiSyntaxError, FuiVersionError, parse_fui, serialize_fui
from .model import (
    FORMAT_VERSION,
    EntityBinding,
    FieldMap,
    FuiDocument,
    Placement,
    Screen,
)
from .packs import PackError, Template, TemplatePack, load_pack
from .template_engine import (
    TemplateRenderError,
    TemplateSyntaxError,
    parse_template,
    render,
)
from .validation import Issue, ValidationReport, validate_fui

__version__ = "0.1.0"

__all__ = [
    "CatalogStore",
    "CatalogView",
    "ComponentDescriptor",
    "Edit",
    "EditError",
    "EditResult",
    "EntityBinding",
    "FORMAT_VERSION",
    "FieldMap",
    "FuiDocument",
    "FuiParseError",
    "FuiSchemaError",
    "FuiSyntaxError",
    "FuiVersionError",
    "GeneratedArtifact",
    "GenerationError",
    "GenerationResult",
    "Issue",
    "PackError",
    "Placement",
    "PropSpec",
    "ReuseCount",
    "Screen",
    "Template",
    "TemplatePack",
    "TemplateRenderError",
    "TemplateSyntaxError",
    "ValidationFailedError",
    "ValidationReport",
    "apply_edit",
    "build_context",
    "emit_schema",
    "generate",
    "load_pack",
    "parse_fui",
    "parse_template",
    "render",
    "serialize_fui",
    "validate_fui",
    "write_output",
]
