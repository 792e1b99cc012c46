// Editor state: the canvas mirror of the last loaded/saved document plus
// unsaved local edits. Every mutation goes through an apply-edit-equivalent
// operation (same semantics as the backend's edit vocabulary: generated
// instance ids, no silent clamping, remove_screen cascades to bindings), so
// a headless session replaying the same operations against the API produces
// the same document after canonicalization.

import {
  BindingDef,
  FuiDocument,
  Placement,
  ScreenDef,
  cloneDocument,
  emptyDocument,
  isSlug,
} from "./fui.js";

export interface CanvasState {
  projectId: string;
  revision: number;
  doc: FuiDocument;
  selectedScreen: string | null;
  selection: string | null;
  dirty: boolean;
}

export interface DropResult {
  ok: boolean;
  instanceId?: string;
  reason?: string;
}

export type Listener = () => void;

export const DEFAULT_GRID = 8;

// Drop sizes per component; anything unknown gets the fallback. The
// catalog has no size metadata, so these are a UI choice.
const DEFAULT_SIZES: Record<string, [number, number]> = {
  button: [120, 40],
  "text-field": [240, 30],
  "combo-box": [200, 30],
  label: [160, 30],
};
const FALLBACK_SIZE: [number, number] = [200, 80];

export function defaultSize(ref: string): [number, number] {
  return DEFAULT_SIZES[ref] ?? FALLBACK_SIZE;
}

export function snap(value: number, grid: number): number {
  if (grid <= 1) return value;
  return Math.round(value / grid) * grid;
}

export function nextInstanceId(screen: ScreenDef, ref: string): string {
  const taken = new Set(screen.components.map((p) => p.instanceId));
  let n = 1;
  while (taken.has(`${ref}-${n}`)) n += 1;
  return `${ref}-${n}`;
}

export class EditorStore {
  state: CanvasState;
  gridSize = DEFAULT_GRID;
  snapEnabled = true;

  private listeners = new Set<Listener>();

  constructor(projectId: string, doc?: FuiDocument) {
    this.state = {
      projectId,
      revision: 0,
      doc: doc ? cloneDocument(doc) : emptyDocument(projectId),
      selectedScreen: doc?.screens[0]?.id ?? null,
      selection: null,
      dirty: false,
    };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private touch(): void {
    this.state.dirty = true;
    this.emit();
  }

  // -- document lifecycle ----------------------------------------------------

  loadDocument(doc: FuiDocument, revision: number): void {
    this.state.doc = cloneDocument(doc);
    this.state.revision = revision;
    this.state.dirty = false;
    if (!this.state.selectedScreen || !this.screen(this.state.selectedScreen)) {
      this.state.selectedScreen = doc.screens[0]?.id ?? null;
    }
    this.state.selection = null;
    this.emit();
  }

  markSaved(revision: number): void {
    this.state.revision = revision;
    this.state.dirty = false;
    this.emit();
  }

  /** Local conditions that block saving (the backend would flag them anyway). */
  saveBlockers(): string[] {
    const blockers: string[] = [];
    for (const screen of this.state.doc.screens) {
      for (const placement of screen.components) {
        if (placement.label.trim() === "") {
          blockers.push(`EMPTY_LABEL: component '${placement.instanceId}' on screen '${screen.id}' needs a name`);
        }
      }
    }
    return blockers;
  }

  // -- selection ---------------------------------------------------------------

  screen(id: string | null | undefined): ScreenDef | null {
    return this.state.doc.screens.find((s) => s.id === id) ?? null;
  }

  currentScreen(): ScreenDef | null {
    return this.screen(this.state.selectedScreen);
  }

  placement(instanceId: string | null): Placement | null {
    const screen = this.currentScreen();
    if (!screen || instanceId === null) return null;
    return screen.components.find((p) => p.instanceId === instanceId) ?? null;
  }

  selectScreen(id: string): void {
    if (!this.screen(id)) return;
    this.state.selectedScreen = id;
    this.state.selection = null;
    this.emit();
  }

  select(instanceId: string | null): void {
    this.state.selection = instanceId;
    this.emit();
  }

  // -- screen edits --------------------------------------------------------------

  addScreen(id: string, title: string, width = 800, height = 600): boolean {
    if (!isSlug(id) || this.screen(id)) return false;
    this.state.doc.screens.push({ id, title, width, height, components: [] });
    this.state.selectedScreen = id;
    this.state.selection = null;
    this.touch();
    return true;
  }

  removeScreen(id: string): BindingDef[] {
    const screen = this.screen(id);
    if (!screen) return [];
    this.state.doc.screens = this.state.doc.screens.filter((s) => s.id !== id);
    const dropped = this.state.doc.bindings.filter((b) => b.screenId === id);
    this.state.doc.bindings = this.state.doc.bindings.filter((b) => b.screenId !== id);
    if (this.state.selectedScreen === id) {
      this.state.selectedScreen = this.state.doc.screens[0]?.id ?? null;
      this.state.selection = null;
    }
    this.touch();
    return dropped;
  }

  // -- placement edits -------------------------------------------------------------

  /**
   * Drop a palette component at canvas coordinates. The placement gets the
   * descriptor-conventional size, a generated instance id, and an empty
   * label: the inspector focuses the name field next, and saving stays
   * blocked until the component is named.
   */
  dropComponent(ref: string, x: number, y: number): DropResult {
    const screen = this.currentScreen();
    if (!screen) return { ok: false, reason: "no screen selected" };
    const [w, h] = defaultSize(ref);
    const sx = this.snapEnabled ? snap(x, this.gridSize) : x;
    const sy = this.snapEnabled ? snap(y, this.gridSize) : y;
    if (sx < 0 || sy < 0 || sx + w > screen.width || sy + h > screen.height) {
      return { ok: false, reason: "drop is outside the canvas" };
    }
    const instanceId = nextInstanceId(screen, ref);
    screen.components.push({
      instanceId, ref, x: sx, y: sy, w, h, label: "", props: {}, action: null,
    });
    this.state.selection = instanceId;
    this.touch();
    return { ok: true, instanceId };
  }

  /** Move without clamping; negative targets are refused, anything else is
   * allowed and left for validation to flag. */
  moveComponent(instanceId: string, x: number, y: number): boolean {
    const placement = this.placement(instanceId);
    if (!placement) return false;
    const sx = this.snapEnabled ? snap(x, this.gridSize) : x;
    const sy = this.snapEnabled ? snap(y, this.gridSize) : y;
    if (sx < 0 || sy < 0) return false;
    placement.x = sx;
    placement.y = sy;
    this.touch();
    return true;
  }

  resizeComponent(instanceId: string, w: number, h: number): boolean {
    const placement = this.placement(instanceId);
    if (!placement) return false;
    const sw = this.snapEnabled ? Math.max(this.gridSize, snap(w, this.gridSize)) : w;
    const sh = this.snapEnabled ? Math.max(this.gridSize, snap(h, this.gridSize)) : h;
    if (sw <= 0 || sh <= 0) return false;
    placement.w = sw;
    placement.h = sh;
    this.touch();
    return true;
  }

  setLabel(instanceId: string, label: string): boolean {
    const placement = this.placement(instanceId);
    if (!placement) return false;
    placement.label = label;
    this.touch();
    return true;
  }

  setProp(instanceId: string, name: string, value: string): boolean {
    const placement = this.placement(instanceId);
    if (!placement) return false;
    placement.props[name] = value;
    this.touch();
    return true;
  }

  removeProp(instanceId: string, name: string): boolean {
    const placement = this.placement(instanceId);
    if (!placement || !(name in placement.props)) return false;
    delete placement.props[name];
    this.touch();
    return true;
  }

  setAction(instanceId: string, action: string | null): boolean {
    const placement = this.placement(instanceId);
    if (!placement) return false;
    if (action !== null && action !== "" && !isSlug(action)) return false;
    placement.action = action === "" ? null : action;
    this.touch();
    return true;
  }

  removeComponent(instanceId: string): boolean {
    const screen = this.currentScreen();
    if (!screen) return false;
    const before = screen.components.length;
    screen.components = screen.components.filter((p) => p.instanceId !== instanceId);
    if (screen.components.length === before) return false;
    if (this.state.selection === instanceId) this.state.selection = null;
    this.touch();
    return true;
  }

  setBinding(binding: BindingDef): boolean {
    if (!this.screen(binding.screenId)) return false;
    const index = this.state.doc.bindings.findIndex(
      (b) => b.screenId === binding.screenId && b.entityName === binding.entityName,
    );
    if (index >= 0) this.state.doc.bindings[index] = binding;
    else this.state.doc.bindings.push(binding);
    this.touch();
    return true;
  }
}
