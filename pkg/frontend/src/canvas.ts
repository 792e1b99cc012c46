// Canvas: renders the selected screen, accepts palette drops, and lets the
// user move components by pointer drag and resize them with a corner handle.
// Geometry is snapped before it reaches the store, so what is saved is what
// the user saw.

import { DRAG_MIME } from "./palette.js";
import { EditorStore } from "./state.js";

export interface CanvasCallbacks {
  onDropRejected(reason: string): void;
  onPlaced(instanceId: string): void;
}

export function setupCanvas(
  container: HTMLElement,
  store: EditorStore,
  callbacks: CanvasCallbacks,
): { render(): void } {
  container.classList.add("canvas-host");
  container.innerHTML = `
    <div class="screen-tabs"></div>
    <div class="canvas-scroll"><div class="canvas-surface"></div></div>
  `;
  const tabs = container.querySelector<HTMLElement>(".screen-tabs")!;
  const surface = container.querySelector<HTMLElement>(".canvas-surface")!;

  interface DragState {
    instanceId: string;
    mode: "move" | "resize";
    startX: number;
    startY: number;
    origX: number;
    origY: number;
    origW: number;
    origH: number;
    element: HTMLElement;
  }
  let drag: DragState | null = null;

  function surfacePoint(event: { clientX: number; clientY: number }): [number, number] {
    const rect = surface.getBoundingClientRect();
    return [Math.round(event.clientX - rect.left), Math.round(event.clientY - rect.top)];
  }

  surface.addEventListener("dragover", (event) => {
    if (event.dataTransfer?.types.includes(DRAG_MIME)) {
      event.preventDefault();
      event.dataTransfer.dropEffect = "copy";
    }
  });

  surface.addEventListener("drop", (event) => {
    const ref = event.dataTransfer?.getData(DRAG_MIME);
    if (!ref) return;
    event.preventDefault();
    const [x, y] = surfacePoint(event);
    const result = store.dropComponent(ref, x, y);
    if (!result.ok) {
      surface.classList.add("drop-rejected");
      setTimeout(() => surface.classList.remove("drop-rejected"), 400);
      callbacks.onDropRejected(result.reason ?? "drop rejected");
    } else {
      callbacks.onPlaced(result.instanceId!);
    }
  });

  surface.addEventListener("pointerdown", (event) => {
    const target = event.target as HTMLElement;
    const element = target.closest<HTMLElement>(".placed");
    if (!element || !element.dataset.instance) {
      store.select(null);
      return;
    }
    const instanceId = element.dataset.instance;
    store.select(instanceId);
    const placement = store.placement(instanceId);
    if (!placement) return;
    drag = {
      instanceId,
      mode: target.classList.contains("resize-handle") ? "resize" : "move",
      startX: event.clientX,
      startY: event.clientY,
      origX: placement.x,
      origY: placement.y,
      origW: placement.w,
      origH: placement.h,
      element,
    };
    surface.setPointerCapture(event.pointerId);
    event.preventDefault();
  });

  surface.addEventListener("pointermove", (event) => {
    if (!drag) return;
    const dx = event.clientX - drag.startX;
    const dy = event.clientY - drag.startY;
    // live feedback only; the store commit happens on pointerup
    if (drag.mode === "move") {
      drag.element.style.left = `${Math.max(0, drag.origX + dx)}px`;
      drag.element.style.top = `${Math.max(0, drag.origY + dy)}px`;
    } else {
      drag.element.style.width = `${Math.max(8, drag.origW + dx)}px`;
      drag.element.style.height = `${Math.max(8, drag.origH + dy)}px`;
    }
  });

  const finishDrag = (event: PointerEvent) => {
    if (!drag) return;
    const dx = event.clientX - drag.startX;
    const dy = event.clientY - drag.startY;
    if (drag.mode === "move") {
      store.moveComponent(drag.instanceId, Math.max(0, drag.origX + dx), Math.max(0, drag.origY + dy));
    } else {
      store.resizeComponent(drag.instanceId, Math.max(8, drag.origW + dx), Math.max(8, drag.origH + dy));
    }
    drag = null;
  };
  surface.addEventListener("pointerup", finishDrag);
  surface.addEventListener("pointercancel", () => { drag = null; render(); });

  function renderTabs(): void {
    tabs.innerHTML = "";
    for (const screen of store.state.doc.screens) {
      const tab = document.createElement("button");
      tab.className = "screen-tab" + (screen.id === store.state.selectedScreen ? " active" : "");
      tab.textContent = screen.title || screen.id;
      tab.title = screen.id;
      tab.addEventListener("click", () => store.selectScreen(screen.id));
      tabs.appendChild(tab);
    }
    const add = document.createElement("button");
    add.className = "screen-tab add";
    add.textContent = "+";
    add.title = "Add screen";
    add.addEventListener("click", () => {
      const id = prompt("New screen id (lowercase slug):");
      if (!id) return;
      if (!store.addScreen(id, id)) alert(`Cannot add screen '${id}'.`);
    });
    tabs.appendChild(add);
  }

  function render(): void {
    renderTabs();
    const screen = store.currentScreen();
    surface.innerHTML = "";
    if (!screen) {
      surface.style.width = "480px";
      surface.style.height = "200px";
      surface.innerHTML = `<div class="canvas-empty">No screen. Add one with the + tab.</div>`;
      return;
    }
    surface.style.width = `${screen.width}px`;
    surface.style.height = `${screen.height}px`;
    for (const placement of screen.components) {
      const element = document.createElement("div");
      element.className = "placed " + placement.ref +
        (placement.instanceId === store.state.selection ? " selected" : "") +
        (placement.label.trim() === "" ? " unnamed" : "");
      element.dataset.instance = placement.instanceId;
      element.style.left = `${placement.x}px`;
      element.style.top = `${placement.y}px`;
      element.style.width = `${placement.w}px`;
      element.style.height = `${placement.h}px`;
      element.textContent = placement.label || `(${placement.instanceId})`;
      if (placement.action) {
        const badge = document.createElement("span");
        badge.className = "action-badge";
        badge.textContent = placement.action;
        element.appendChild(badge);
      }
      if (placement.instanceId === store.state.selection) {
        const handle = document.createElement("span");
        handle.className = "resize-handle";
        element.appendChild(handle);
      }
      surface.appendChild(element);
    }
  }

  return { render };
}
