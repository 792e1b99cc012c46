"""HTTP API over the studio pipeline, for the designer UI and scripts.

Documents travel as FUI XML (``application/x-fui+xml``); everything else
is canonical JSON (sorted keys, two-space indent, LF).  Errors use a
closed code set: BAD_REQUEST, PARSE_ERROR, NOT_FOUND, NO_CHANGE,
REVISION_CONFLICT, VALIDATION, VALIDATION_FAILED, GENERATION_FAILED.

Projects are held in memory with optimistic concurrency: saves carry an
``X-Expected-Revision`` header and conflict with 409 when stale.  Each
successful generation records reuse statistics exactly once and
atomically replaces the project's served artifact set.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from fastapi import FastAPI, Request, Response

from .catalog import CatalogStore, NoChangeError, descriptor_from_dict, descriptor_to_dict
from .codegen import GenerationError, GenerationResult, ValidationFailedError, generate
from .fui_xml import FuiParseError, parse_fui, serialize_fui
from .model import FuiDocument
from .packs import TemplatePack, load_pack
from .validation import ValidationReport, validate_fui

FUI_MEDIA_TYPE = "application/x-fui+xml"
REVISION_HEADER = "X-Expected-Revision"

_MEDIA_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".sql": "text/plain; charset=utf-8",
    ".json": "application/json",
}


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str,
                 details: ValidationReport | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details


@dataclass
class ProjectRecord:
    """One working document with a save revision and timestamps."""

    id: str
    doc: FuiDocument
    revision: int
    created: str
    updated: str
    result: GenerationResult | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def meta(self) -> dict:
        return {
            "id": self.id,
            "revision": self.revision,
            "created": self.created,
            "updated": self.updated,
            "screens": len(self.doc.screens),
        }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _json_response(payload, status: int = 200) -> Response:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    return Response(content=text, status_code=status, media_type="application/json")


def _report_payload(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "issues": [
            {"severity": i.severity, "code": i.code, "locus": i.locus, "message": i.message}
            for i in report.issues
        ],
    }


def create_app(catalog_root: Path | str, pack_roots: Sequence[Path | str] = (),
               ui_dir: Path | None = None) -> FastAPI:
    store = CatalogStore.open(Path(catalog_root))
    packs: dict[str, TemplatePack] = {}
    for pack_root in pack_roots:
        pack = load_pack(Path(pack_root))
        packs[pack.name] = pack

    projects: dict[str, ProjectRecord] = {}
    projects_lock = threading.Lock()

    app = FastAPI(title="studio API", docs_url=None, redoc_url=None, openapi_url=None)

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> Response:
        payload = {"status": exc.status, "code": exc.code, "message": exc.message}
        if exc.details is not None:
            payload["details"] = _report_payload(exc.details)
        return _json_response(payload, status=exc.status)

    def _project(project_id: str) -> ProjectRecord:
        record = projects.get(project_id)
        if record is None:
            raise ApiError(404, "NOT_FOUND", f"no project {project_id!r}")
        return record

    def _pack(name: str | None) -> TemplatePack:
        if name is None:
            if len(packs) == 1:
                return next(iter(packs.values()))
            raise ApiError(400, "BAD_REQUEST", "pack query parameter is required")
        pack = packs.get(name)
        if pack is None:
            raise ApiError(404, "NOT_FOUND", f"no pack {name!r}")
        return pack

    # -- catalog ---------------------------------------------------------

    @app.get("/api/palette")
    def palette() -> Response:
        return _json_response([descriptor_to_dict(d) for d in store.heads()])

    @app.get("/api/components")
    def components(q: str | None = None, category: str | None = None,
                   tag: str | None = None) -> Response:
        results = store.search(text=q, category=category, domain_tag=tag)
        return _json_response([descriptor_to_dict(d) for d in results])

    @app.post("/api/components")
    async def register_component(request: Request) -> Response:
        try:
            data = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            raise ApiError(400, "BAD_REQUEST", f"body is not JSON: {exc}")
        try:
            descriptor = descriptor_from_dict(data, require_version=False)
        except ValueError as exc:
            raise ApiError(422, "VALIDATION", str(exc))
        try:
            version = store.register(descriptor)
        except NoChangeError as exc:
            raise ApiError(409, "NO_CHANGE", str(exc))
        return _json_response({"id": descriptor.id, "version": version}, status=201)

    @app.get("/api/packs")
    def list_packs() -> Response:
        return _json_response([
            {"name": p.name, "version": p.version, "target_label": p.target_label}
            for _, p in sorted(packs.items())
        ])

    @app.get("/api/stats/rarely-used")
    def rarely_used(threshold: int = 0) -> Response:
        if threshold < 0:
            raise ApiError(400, "BAD_REQUEST", "threshold must be >= 0")
        rows = store.rarely_used_report(threshold)
        return _json_response({
            "threshold": threshold,
            "components": [{"id": cid, "placements": placements} for cid, placements in rows],
        })

    # -- projects --------------------------------------------------------

    @app.get("/api/projects")
    def list_projects() -> Response:
        with projects_lock:
            metas = [projects[pid].meta() for pid in sorted(projects)]
        return _json_response(metas)

    @app.get("/api/projects/{project_id}")
    def project_meta(project_id: str) -> Response:
        return _json_response(_project(project_id).meta())

    @app.get("/api/projects/{project_id}/fui")
    def load_fui(project_id: str) -> Response:
        record = _project(project_id)
        with record.lock:
            text = serialize_fui(record.doc)
            revision = record.revision
        return Response(content=text, media_type=FUI_MEDIA_TYPE,
                        headers={"X-Revision": str(revision)})

    @app.put("/api/projects/{project_id}/fui")
    async def save_fui(project_id: str, request: Request) -> Response:
        raw = await request.body()
        try:
            doc = parse_fui(raw.decode("utf-8"))
        except (UnicodeDecodeError, FuiParseError) as exc:
            raise ApiError(400, "PARSE_ERROR", f"malformed FUI document: {exc}")

        expected_header = request.headers.get(REVISION_HEADER)
        expected: int | None = None
        if expected_header is not None:
            try:
                expected = int(expected_header)
            except ValueError:
                raise ApiError(400, "BAD_REQUEST", f"bad {REVISION_HEADER} header")

        with projects_lock:
            record = projects.get(project_id)
            if record is None:
                if expected not in (None, 0):
                    raise ApiError(409, "REVISION_CONFLICT",
                                   f"project is at revision 0, expected {expected}")
                now = _now()
                record = ProjectRecord(id=project_id, doc=doc, revision=1,
                                       created=now, updated=now)
                projects[project_id] = record
                return _json_response({"project": project_id, "revision": 1}, status=201)

        with record.lock:
            if expected is not None and expected != record.revision:
                raise ApiError(409, "REVISION_CONFLICT",
                               f"project is at revision {record.revision}, expected {expected}")
            record.doc = doc
            record.revision += 1
            record.updated = _now()
            return _json_response({"project": project_id, "revision": record.revision})

    @app.post("/api/projects/{project_id}/validate")
    def validate_project(project_id: str) -> Response:
        record = _project(project_id)
        with record.lock:
            doc = record.doc
        return _json_response(_report_payload(validate_fui(doc, store)))

    @app.post("/api/projects/{project_id}/generate")
    def generate_project(project_id: str, pack: str | None = None) -> Response:
        record = _project(project_id)
        chosen = _pack(pack)
        with record.lock:
            doc = record.doc
            revision = record.revision
            try:
                result = generate(doc, chosen, store)
            except ValidationFailedError as exc:
                raise ApiError(422, "VALIDATION_FAILED", str(exc), details=exc.report)
            except GenerationError as exc:
                raise ApiError(422, "GENERATION_FAILED", str(exc))
            store.record_reuse(project_id, doc)
            record.result = result
        return _json_response({
            "project": project_id,
            "revision": revision,
            "pack": {"name": chosen.name, "version": chosen.version},
            "artifacts": result.paths(),
            "manifest": json.loads(result.manifest),
        })

    @app.get("/api/projects/{project_id}/artifacts/{artifact_path:path}")
    def fetch_artifact(project_id: str, artifact_path: str) -> Response:
        record = _project(project_id)
        with record.lock:
            result = record.result
        if result is None:
            raise ApiError(404, "NOT_FOUND", f"project {project_id!r} has no generated artifacts")
        if artifact_path == "manifest.json":
            return Response(content=result.manifest, media_type="application/json")
        artifact = result.find(artifact_path)
        if artifact is None:
            raise ApiError(404, "NOT_FOUND", f"no artifact {artifact_path!r}")
        media_type = _MEDIA_TYPES.get(Path(artifact_path).suffix, "application/octet-stream")
        return Response(content=artifact.data, media_type=media_type)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
