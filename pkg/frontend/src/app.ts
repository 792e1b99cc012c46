// Application wiring: one EditorStore, the four panels, and the toolbar
// actions (save / validate / generate). Generation is single-flight per
// project: a click while a request is in flight coalesces into one rerun.

import { ApiRequestError, StudioApi } from "./api.js";
import { emptyDocument } from "./fui.js";
import { setupCanvas } from "./canvas.js";
import { setupFileTree } from "./filetree.js";
import { setupInspector } from "./inspector.js";
import { setupIssues } from "./issues.js";
import { setupPalette } from "./palette.js";
import { EditorStore } from "./state.js";

const PALETTE_RETRY_MS = 4000;

function projectIdFromUrl(): string {
  const param = new URLSearchParams(window.location.search).get("project");
  return param && /^[a-z0-9-]+$/.test(param) ? param : "untitled";
}

export async function startApp(root: HTMLElement): Promise<void> {
  const api = new StudioApi("");
  const projectId = projectIdFromUrl();

  root.innerHTML = `
    <header class="topbar">
      <span class="brand">studio</span>
      <span class="project-name">${projectId}</span>
      <span class="save-state" data-role="save-state"></span>
      <span class="spacer"></span>
      <label class="snap-toggle"><input type="checkbox" checked data-role="snap"> snap 8px</label>
      <button data-role="save">Save</button>
      <button data-role="validate">Validate</button>
      <select data-role="pack"></select>
      <button data-role="generate">Generate</button>
    </header>
    <div class="banner" data-role="banner" hidden></div>
    <main class="workspace">
      <aside class="left" data-role="palette"></aside>
      <section class="center" data-role="canvas"></section>
      <aside class="right" data-role="inspector"></aside>
    </main>
    <footer class="bottom">
      <div class="bottom-tabs">
        <button class="active" data-tab="issues">Validation</button>
        <button data-tab="files">Generated files</button>
      </div>
      <div class="bottom-panel" data-role="issues"></div>
      <div class="bottom-panel" data-role="files" hidden></div>
    </footer>
  `;

  const el = <T extends HTMLElement>(role: string): T =>
    root.querySelector<T>(`[data-role="${role}"]`)!;

  const banner = el<HTMLElement>("banner");
  const saveState = el<HTMLElement>("save-state");
  const packSelect = el<HTMLSelectElement>("pack");
  const saveButton = el<HTMLButtonElement>("save");
  const generateButton = el<HTMLButtonElement>("generate");
  const validateButton = el<HTMLButtonElement>("validate");

  function notify(message: string, kind: "error" | "info" = "error"): void {
    banner.hidden = false;
    banner.className = `banner ${kind}`;
    banner.textContent = message;
    setTimeout(() => { banner.hidden = true; }, 6000);
  }

  const store = new EditorStore(projectId);
  const palette = setupPalette(el("palette"));
  const inspector = setupInspector(el("inspector"), store);
  const issues = setupIssues(el("issues"), store);
  const files = setupFileTree(el("files"), (path) => api.fetchArtifact(projectId, path));
  const canvas = setupCanvas(el("canvas"), store, {
    onDropRejected: (reason) => notify(reason),
    onPlaced: () => {
      render();
      inspector.focusLabel();  // name entry comes right after the drop
    },
  });

  el<HTMLInputElement>("snap").addEventListener("change", (event) => {
    store.snapEnabled = (event.target as HTMLInputElement).checked;
  });

  root.querySelectorAll<HTMLButtonElement>(".bottom-tabs button").forEach((button) => {
    button.addEventListener("click", () => {
      root.querySelectorAll(".bottom-tabs button").forEach((b) => b.classList.remove("active"));
      button.classList.add("active");
      el<HTMLElement>("issues").hidden = button.dataset.tab !== "issues";
      el<HTMLElement>("files").hidden = button.dataset.tab !== "files";
    });
  });

  let lastValidation: { issues: never[] | import("./api.js").IssueDto[]; revision: number } | null = null;
  let generating = false;
  let generateQueued = false;

  function render(): void {
    canvas.render();
    inspector.render();
    const blockers = store.saveBlockers();
    saveButton.disabled = blockers.length > 0;
    saveButton.title = blockers.join("\n");
    generateButton.disabled = generating || store.state.dirty || store.state.revision === 0;
    generateButton.title = store.state.dirty || store.state.revision === 0
      ? "Save (and validate cleanly) before generating"
      : "";
    saveState.textContent = store.state.dirty
      ? "unsaved changes"
      : store.state.revision > 0 ? `saved r${store.state.revision}` : "new project";
    saveState.className = "save-state" + (store.state.dirty ? " dirty" : "");
  }

  store.subscribe(render);

  async function loadPalette(): Promise<void> {
    try {
      const descriptors = await api.getPalette();
      palette.setDescriptors(descriptors);
      inspector.setDescriptors(descriptors);
    } catch (error) {
      palette.setError(`Palette unavailable (${error}); retrying...`);
      setTimeout(loadPalette, PALETTE_RETRY_MS);
    }
  }

  async function loadPacks(): Promise<void> {
    try {
      const packs = await api.getPacks();
      packSelect.innerHTML = "";
      for (const pack of packs) {
        const option = document.createElement("option");
        option.value = pack.name;
        option.textContent = `${pack.name} v${pack.version}`;
        option.title = pack.target_label;
        packSelect.appendChild(option);
      }
    } catch {
      packSelect.innerHTML = `<option value="">no packs</option>`;
    }
  }

  async function save(): Promise<boolean> {
    const blockers = store.saveBlockers();
    if (blockers.length > 0) {
      notify(blockers[0]!);
      return false;
    }
    try {
      const revision = await api.saveDocument(projectId, store.state.doc, store.state.revision);
      store.markSaved(revision);
      return true;
    } catch (error) {
      if (error instanceof ApiRequestError && error.status === 409) {
        const reload = confirm(
          "The project changed on the server. OK reloads the server copy " +
          "(discarding local edits); Cancel overwrites it.",
        );
        if (reload) {
          const loaded = await api.loadDocument(projectId);
          if (loaded) store.loadDocument(loaded.doc, loaded.revision);
        } else {
          const loaded = await api.loadDocument(projectId);
          const revision = await api.saveDocument(projectId, store.state.doc, loaded?.revision ?? 0);
          store.markSaved(revision);
          return true;
        }
        return false;
      }
      notify(`save failed: ${error}`);
      return false;
    }
  }

  async function validate(): Promise<void> {
    if (store.state.revision === 0 || store.state.dirty) {
      if (!(await save())) return;
    }
    try {
      const report = await api.validate(projectId);
      lastValidation = { issues: report.issues, revision: store.state.revision };
      issues.show(report.issues, false);
    } catch (error) {
      notify(`validation failed: ${error}`);
    }
  }

  async function generate(): Promise<void> {
    if (generating) {
      generateQueued = true;  // coalesce rapid clicks into one rerun
      return;
    }
    generating = true;
    render();
    try {
      const packName = packSelect.value;
      const response = await api.generate(projectId, packName);
      files.show(response.artifacts);
      root.querySelector<HTMLButtonElement>('[data-tab="files"]')!.click();
      notify(`generated ${response.artifacts.length} artifacts with ${packName}`, "info");
    } catch (error) {
      if (error instanceof ApiRequestError && error.details) {
        issues.show(error.details.issues, false);
        root.querySelector<HTMLButtonElement>('[data-tab="issues"]')!.click();
        notify("generation refused: the document has validation errors");
      } else {
        notify(`generation failed: ${error}`);
      }
    } finally {
      generating = false;
      render();
      if (generateQueued) {
        generateQueued = false;
        void generate();
      }
    }
  }

  saveButton.addEventListener("click", () => void save());
  validateButton.addEventListener("click", () => void validate());
  generateButton.addEventListener("click", () => void generate());

  // initial load
  files.clear();
  issues.show([], false);
  await Promise.all([loadPalette(), loadPacks()]);
  const existing = await api.loadDocument(projectId).catch(() => null);
  if (existing) {
    store.loadDocument(existing.doc, existing.revision);
  } else {
    const doc = emptyDocument(projectId);
    doc.screens.push({ id: "screen-1", title: "Screen 1", width: 800, height: 600, components: [] });
    store.loadDocument(doc, 0);
  }
  render();
}

const rootElement = document.getElementById("app");
if (rootElement) {
  void startApp(rootElement);
}
