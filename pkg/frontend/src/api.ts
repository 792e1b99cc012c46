// Thin typed client over the studio HTTP API. All endpoints are JSON except
// the document load/save pair, which speaks the FUI XML format.

import { FuiDocument, parseFui, serializeFui } from "./fui.js";

export interface PropSpec {
  name: string;
  type: "string" | "int" | "bool" | "enum";
  values?: string[];
  default?: string;
}

export interface Descriptor {
  id: string;
  name: string;
  category: "general_purpose" | "domain_specific" | "product_specific";
  domain_tags: string[];
  prop_schema: PropSpec[];
  template_hooks: string[];
  version: number;
}

export interface IssueDto {
  severity: "error" | "warning";
  code: string;
  locus: string;
  message: string;
}

export interface ReportDto {
  ok: boolean;
  issues: IssueDto[];
}

export interface PackDto {
  name: string;
  version: number;
  target_label: string;
}

export interface ManifestEntry {
  path: string;
  size: number;
  sha256: string;
}

export interface GenerateResponse {
  project: string;
  revision: number;
  pack: { name: string; version: number };
  artifacts: string[];
  manifest: { artifacts: ManifestEntry[]; pack: unknown; project: string };
}

export interface LoadedDocument {
  doc: FuiDocument;
  revision: number;
}

export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details?: ReportDto,
  ) {
    super(message);
  }
}

async function toError(response: Response): Promise<ApiRequestError> {
  let code = "UNKNOWN";
  let message = `${response.status} ${response.statusText}`;
  let details: ReportDto | undefined;
  try {
    const body = await response.json();
    code = body.code ?? code;
    message = body.message ?? message;
    details = body.details;
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiRequestError(response.status, code, message, details);
}

export class StudioApi {
  constructor(readonly base: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) throw await toError(response);
    return (await response.json()) as T;
  }

  getPalette(): Promise<Descriptor[]> {
    return this.json("/api/palette");
  }

  searchComponents(q?: string, category?: string, tag?: string): Promise<Descriptor[]> {
    const params = new URLSearchParams();
    if (q) params.set("q", q);
    if (category) params.set("category", category);
    if (tag) params.set("tag", tag);
    const query = params.toString();
    return this.json(`/api/components${query ? "?" + query : ""}`);
  }

  getPacks(): Promise<PackDto[]> {
    return this.json("/api/packs");
  }

  /** Returns null when the project does not exist on the server yet. */
  async loadDocument(projectId: string): Promise<LoadedDocument | null> {
    const response = await fetch(`${this.base}/api/projects/${projectId}/fui`);
    if (response.status === 404) return null;
    if (!response.ok) throw await toError(response);
    const revision = parseInt(response.headers.get("X-Revision") ?? "0", 10);
    return { doc: parseFui(await response.text()), revision };
  }

  /**
   * Save with optimistic concurrency; expectedRevision 0 means "create".
   * Returns the new revision.
   */
  async saveDocument(projectId: string, doc: FuiDocument, expectedRevision: number): Promise<number> {
    const response = await fetch(`${this.base}/api/projects/${projectId}/fui`, {
      method: "PUT",
      headers: {
        "Content-Type": "application/x-fui+xml",
        "X-Expected-Revision": String(expectedRevision),
      },
      body: serializeFui(doc),
    });
    if (!response.ok) throw await toError(response);
    const body = await response.json();
    return body.revision as number;
  }

  validate(projectId: string): Promise<ReportDto> {
    return this.json(`/api/projects/${projectId}/validate`, { method: "POST" });
  }

  generate(projectId: string, pack: string): Promise<GenerateResponse> {
    return this.json(`/api/projects/${projectId}/generate?pack=${encodeURIComponent(pack)}`, {
      method: "POST",
    });
  }

  async fetchArtifact(projectId: string, path: string): Promise<string> {
    const response = await fetch(`${this.base}/api/projects/${projectId}/artifacts/${path}`);
    if (!response.ok) throw await toError(response);
    return response.text();
  }

  rarelyUsed(threshold: number): Promise<{ threshold: number; components: { id: string; placements: number }[] }> {
    return this.json(`/api/stats/rarely-used?threshold=${threshold}`);
  }
}
