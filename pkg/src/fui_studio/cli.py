"""Command-line surface for the studio pipeline.

Exit codes, shared by ``validate`` and ``generate``:

* 0 — success (warnings alone do not fail)
* 1 — the document has validation errors
* 2 — the document could not be parsed
* 3 — I/O problem (missing path, unreadable store or pack)
* 4 — output directory is not empty
* 5 — generation failed after validation (template render error)
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .catalog import CatalogError, CatalogStore
from .codegen import GenerationError, NonEmptyOutputError, ValidationFailedError, generate, write_output
from .fui_xml import FuiParseError, parse_fui
from .packs import PackError, load_pack
from .validation import ValidationReport, validate_fui

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_NON_EMPTY_OUTPUT = 4
EXIT_GENERATION = 5

DEFAULT_PORT = 8000


@click.group()
@click.version_option(package_name="fui-studio")
def main() -> None:
    """Design screens, validate them against a component catalog, and
    generate source trees through template packs."""


def _read_document(fui_path: Path):
    if not fui_path.is_file():
        click.echo(f"error: no such file: {fui_path}", err=True)
        sys.exit(EXIT_IO)
    try:
        text = fui_path.read_bytes().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        click.echo(f"error: cannot read {fui_path}: {exc}", err=True)
        sys.exit(EXIT_PARSE if isinstance(exc, UnicodeDecodeError) else EXIT_IO)
    try:
        return parse_fui(text)
    except FuiParseError as exc:
        click.echo(f"parse error in {fui_path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _open_store(catalog_root: Path) -> CatalogStore:
    if not catalog_root.exists():
        click.echo(f"error: no such path: {catalog_root}", err=True)
        sys.exit(EXIT_IO)
    try:
        return CatalogStore.open(catalog_root)
    except CatalogError as exc:
        click.echo(f"catalog error: {exc}", err=True)
        sys.exit(EXIT_IO)


def _echo_report(report: ValidationReport) -> None:
    for issue in sorted(report.issues, key=lambda i: (i.locus, i.code)):
        click.echo(f"{issue.severity.upper()} {issue.code} {issue.locus}: {issue.message}")


@main.command()
@click.argument("fui_path", type=click.Path(path_type=Path))
@click.option("--catalog", "catalog_root", required=True, type=click.Path(path_type=Path),
              help="Catalog store root to validate against.")
def validate(fui_path: Path, catalog_root: Path) -> None:
    """Validate a FUI document against a catalog; exit 0 when clean."""
    store = _open_store(catalog_root)
    doc = _read_document(fui_path)
    report = validate_fui(doc, store)
    _echo_report(report)
    if not report.ok:
        click.echo(f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)")
        sys.exit(EXIT_VALIDATION)
    click.echo(f"valid: {len(doc.screens)} screen(s), {len(report.warnings)} warning(s)")


@main.command(name="generate")
@click.argument("fui_path", type=click.Path(path_type=Path))
@click.option("--catalog", "catalog_root", required=True, type=click.Path(path_type=Path))
@click.option("--pack", "pack_root", required=True, type=click.Path(path_type=Path),
              help="Template pack directory.")
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path),
              help="Output directory; must be empty or absent.")
def generate_cmd(fui_path: Path, catalog_root: Path, pack_root: Path, out_dir: Path) -> None:
    """Validate, generate, and write a source tree plus manifest."""
    store = _open_store(catalog_root)
    if not pack_root.exists():
        click.echo(f"error: no such path: {pack_root}", err=True)
        sys.exit(EXIT_IO)
    try:
        pack = load_pack(pack_root)
    except PackError as exc:
        click.echo(f"pack error: {exc}", err=True)
        sys.exit(EXIT_IO)
    doc = _read_document(fui_path)

    try:
        result = generate(doc, pack, store)
    except ValidationFailedError as exc:
        _echo_report(exc.report)
        click.echo(f"validation failed: {len(exc.report.errors)} error(s)", err=True)
        sys.exit(EXIT_VALIDATION)
    except GenerationError as exc:
        click.echo(f"generation error: {exc}", err=True)
        sys.exit(EXIT_GENERATION)

    try:
        manifest_path = write_output(result, out_dir)
    except NonEmptyOutputError as exc:
        click.echo(f"output error: {exc}", err=True)
        sys.exit(EXIT_NON_EMPTY_OUTPUT)
    except (GenerationError, OSError) as exc:
        click.echo(f"write error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(f"generated {len(result.artifacts)} artifact(s) into {out_dir}")
    click.echo(f"manifest: {manifest_path}")


@main.command()
@click.argument("text", required=False)
@click.option("--catalog", "catalog_root", required=True, type=click.Path(path_type=Path))
@click.option("--category", type=click.Choice(["general_purpose", "domain_specific", "product_specific"]))
@click.option("--tag", "domain_tag", help="Require a domain tag.")
def search(text: str | None, catalog_root: Path, category: str | None, domain_tag: str | None) -> None:
    """Search catalog head descriptors by text, category, and domain tag."""
    store = _open_store(catalog_root)
    for descriptor in store.search(text=text, category=category, domain_tag=domain_tag):
        tags = ",".join(sorted(descriptor.domain_tags)) or "-"
        click.echo(f"{descriptor.id}\tv{descriptor.version}\t{descriptor.category}\t{tags}\t{descriptor.name}")


@main.command()
@click.option("--catalog", "catalog_root", required=True, type=click.Path(path_type=Path))
@click.option("--threshold", default=0, show_default=True, type=click.IntRange(min=0),
              help="Report components placed at most this many times.")
def stats(catalog_root: Path, threshold: int) -> None:
    """Report rarely used components (fewest placements first)."""
    store = _open_store(catalog_root)
    rows = store.rarely_used_report(threshold)
    if not rows:
        click.echo(f"no components with placements <= {threshold}")
        return
    for component_id, placements in rows:
        click.echo(f"{placements}\t{component_id}")


@main.command()
@click.option("--catalog", "catalog_root", required=True, type=click.Path(path_type=Path))
@click.option("--pack", "pack_roots", multiple=True, type=click.Path(path_type=Path),
              help="Template pack directory; may be given multiple times.")
@click.option("--port", default=DEFAULT_PORT, show_default=True, type=int)
@click.option("--ui", "ui_dir", type=click.Path(path_type=Path), default=None,
              help="Directory of built designer-UI assets to serve at /.")
def serve(catalog_root: Path, pack_roots: tuple[Path, ...], port: int, ui_dir: Path | None) -> None:
    """Run the HTTP API (and optionally the designer UI)."""
    import uvicorn

    from .api import create_app

    if not catalog_root.exists():
        click.echo(f"error: no such path: {catalog_root}", err=True)
        sys.exit(EXIT_IO)
    if ui_dir is not None and not ui_dir.is_dir():
        click.echo(f"error: no such directory: {ui_dir}", err=True)
        sys.exit(EXIT_IO)
    try:
        app = create_app(catalog_root, pack_roots, ui_dir=ui_dir)
    except (CatalogError, PackError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="info")


if __name__ == "__main__":
    main()
