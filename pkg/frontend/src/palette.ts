// Palette panel: catalog heads grouped by reuse category, filterable,
// draggable onto the canvas.

import { Descriptor } from "./api.js";

const CATEGORY_LABELS: Record<string, string> = {
  general_purpose: "general purpose",
  domain_specific: "domain specific",
  product_specific: "product specific",
};

export const DRAG_MIME = "application/x-component-ref";

export interface PaletteHandle {
  setDescriptors(descriptors: Descriptor[]): void;
  setError(message: string | null): void;
}

export function setupPalette(container: HTMLElement): PaletteHandle {
  container.classList.add("palette");
  container.innerHTML = `
    <div class="panel-title">Palette</div>
    <input class="palette-search" type="search" placeholder="Filter components...">
    <div class="palette-error" hidden></div>
    <div class="palette-groups"></div>
  `;
  const search = container.querySelector<HTMLInputElement>(".palette-search")!;
  const errorBox = container.querySelector<HTMLElement>(".palette-error")!;
  const groups = container.querySelector<HTMLElement>(".palette-groups")!;

  let all: Descriptor[] = [];

  function matches(descriptor: Descriptor, needle: string): boolean {
    // same semantics as the search API: case-insensitive substring on id or name
    const q = needle.toLowerCase();
    return descriptor.id.toLowerCase().includes(q) || descriptor.name.toLowerCase().includes(q);
  }

  function renderList(): void {
    const needle = search.value.trim();
    const visible = needle ? all.filter((d) => matches(d, needle)) : all;
    groups.innerHTML = "";
    if (visible.length === 0) {
      groups.innerHTML = `<div class="palette-empty">${
        all.length === 0 ? "The catalog is empty." : "No components match."
      }</div>`;
      return;
    }
    for (const category of Object.keys(CATEGORY_LABELS)) {
      const members = visible.filter((d) => d.category === category);
      if (members.length === 0) continue;
      const section = document.createElement("section");
      section.innerHTML = `<h3>${CATEGORY_LABELS[category]}</h3>`;
      for (const descriptor of members) {
        const item = document.createElement("div");
        item.className = "palette-item";
        item.draggable = true;
        item.dataset.ref = descriptor.id;
        item.innerHTML = `<span class="palette-name">${descriptor.name}</span>` +
          `<span class="palette-id">${descriptor.id} v${descriptor.version}</span>`;
        item.addEventListener("dragstart", (event) => {
          event.dataTransfer?.setData(DRAG_MIME, descriptor.id);
          event.dataTransfer!.effectAllowed = "copy";
        });
        section.appendChild(item);
      }
      groups.appendChild(section);
    }
  }

  search.addEventListener("input", renderList);

  return {
    setDescriptors(descriptors: Descriptor[]) {
      all = descriptors;
      errorBox.hidden = true;
      renderList();
    },
    setError(message: string | null) {
      if (message === null) {
        errorBox.hidden = true;
      } else {
        errorBox.hidden = false;
        errorBox.textContent = message;
      }
    },
  };
}
