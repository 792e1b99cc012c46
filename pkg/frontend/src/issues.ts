// Validation panel: renders the server's report; clicking an issue jumps
// to the screen/component its locus names.

import { IssueDto } from "./api.js";
import { EditorStore } from "./state.js";

const LOCUS_RE = /^screen\[([^\]]+)\](?:\/component\[([^\]]+)\])?/;

export function locusTarget(locus: string): { screenId: string; instanceId: string | null } | null {
  const match = LOCUS_RE.exec(locus);
  if (!match) return null;
  return { screenId: match[1]!, instanceId: match[2] ?? null };
}

export function setupIssues(
  container: HTMLElement,
  store: EditorStore,
): { show(issues: IssueDto[], stale: boolean): void } {
  container.classList.add("issues");

  function show(issues: IssueDto[], stale: boolean): void {
    container.innerHTML = "";
    if (stale) {
      container.innerHTML = `<div class="issues-stale">Unsaved changes; validate again after saving.</div>`;
    }
    if (issues.length === 0) {
      container.innerHTML += `<div class="issues-clean">No findings.</div>`;
      return;
    }
    const list = document.createElement("ul");
    for (const issue of issues) {
      const item = document.createElement("li");
      item.className = `issue ${issue.severity}`;
      item.innerHTML =
        `<span class="issue-code">${issue.code}</span>` +
        `<span class="issue-locus">${issue.locus}</span>` +
        `<span class="issue-message">${issue.message}</span>`;
      const target = locusTarget(issue.locus);
      if (target) {
        item.classList.add("clickable");
        item.addEventListener("click", () => {
          store.selectScreen(target.screenId);
          if (target.instanceId) store.select(target.instanceId);
        });
      }
      list.appendChild(item);
    }
    container.appendChild(list);
  }

  return { show };
}
