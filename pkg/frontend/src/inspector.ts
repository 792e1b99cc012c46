// Inspector: edits the selected placement (name first, then geometry,
// catalog-schema props, and the action routing hint).

import { Descriptor } from "./api.js";
import { EditorStore } from "./state.js";

export interface InspectorHandle {
  render(): void;
  focusLabel(): void;
  setDescriptors(list: Descriptor[]): void;
}

export function setupInspector(container: HTMLElement, store: EditorStore): InspectorHandle {
  container.classList.add("inspector");

  let labelInput: HTMLInputElement | null = null;
  let descriptors = new Map<string, Descriptor>();

  function setDescriptors(list: Descriptor[]): void {
    descriptors = new Map(list.map((d) => [d.id, d]));
  }

  function row(label: string, input: HTMLElement): HTMLElement {
    const wrapper = document.createElement("label");
    wrapper.className = "field-row";
    const span = document.createElement("span");
    span.textContent = label;
    wrapper.append(span, input);
    return wrapper;
  }

  function numberInput(value: number, onCommit: (v: number) => void): HTMLInputElement {
    const input = document.createElement("input");
    input.type = "number";
    input.value = String(value);
    input.addEventListener("change", () => {
      const parsed = parseInt(input.value, 10);
      if (!Number.isNaN(parsed)) onCommit(parsed);
    });
    return input;
  }

  function render(): void {
    labelInput = null;
    const placement = store.placement(store.state.selection);
    if (!placement) {
      container.innerHTML = `<div class="panel-title">Inspector</div>
        <div class="inspector-empty">Select a component on the canvas.</div>`;
      return;
    }
    const descriptor = descriptors.get(placement.ref);
    container.innerHTML = `<div class="panel-title">Inspector</div>`;

    const heading = document.createElement("div");
    heading.className = "inspector-heading";
    heading.textContent = `${descriptor?.name ?? placement.ref} · ${placement.instanceId}`;
    container.appendChild(heading);

    labelInput = document.createElement("input");
    labelInput.type = "text";
    labelInput.value = placement.label;
    labelInput.placeholder = "required before saving";
    labelInput.addEventListener("input", () => {
      store.setLabel(placement.instanceId, labelInput!.value);
    });
    const nameRow = row("name", labelInput);
    if (placement.label.trim() === "") nameRow.classList.add("invalid");
    container.appendChild(nameRow);

    const geometry = document.createElement("div");
    geometry.className = "geometry-grid";
    geometry.append(
      row("x", numberInput(placement.x, (v) => store.moveComponent(placement.instanceId, v, placement.y))),
      row("y", numberInput(placement.y, (v) => store.moveComponent(placement.instanceId, placement.x, v))),
      row("w", numberInput(placement.w, (v) => store.resizeComponent(placement.instanceId, v, placement.h))),
      row("h", numberInput(placement.h, (v) => store.resizeComponent(placement.instanceId, placement.w, v))),
    );
    container.appendChild(geometry);

    const actionInput = document.createElement("input");
    actionInput.type = "text";
    actionInput.value = placement.action ?? "";
    actionInput.placeholder = "handler action slug (optional)";
    actionInput.addEventListener("change", () => {
      if (!store.setAction(placement.instanceId, actionInput.value || null)) {
        actionInput.classList.add("invalid-input");
      } else {
        actionInput.classList.remove("invalid-input");
      }
    });
    container.appendChild(row("action", actionInput));

    if (descriptor && descriptor.prop_schema.length > 0) {
      const header = document.createElement("h4");
      header.textContent = "props";
      container.appendChild(header);
      for (const spec of descriptor.prop_schema) {
        const current = placement.props[spec.name] ?? spec.default ?? "";
        let input: HTMLElement;
        if (spec.type === "enum") {
          const select = document.createElement("select");
          for (const value of spec.values ?? []) {
            const option = document.createElement("option");
            option.value = value;
            option.textContent = value;
            option.selected = value === current;
            select.appendChild(option);
          }
          select.addEventListener("change", () =>
            store.setProp(placement.instanceId, spec.name, select.value));
          input = select;
        } else if (spec.type === "bool") {
          const checkbox = document.createElement("input");
          checkbox.type = "checkbox";
          checkbox.checked = current === "true";
          checkbox.addEventListener("change", () =>
            store.setProp(placement.instanceId, spec.name, checkbox.checked ? "true" : "false"));
          input = checkbox;
        } else {
          const text = document.createElement("input");
          text.type = "text";
          text.value = current;
          text.addEventListener("change", () =>
            store.setProp(placement.instanceId, spec.name, text.value));
          input = text;
        }
        container.appendChild(row(spec.name, input));
      }
    }

    const remove = document.createElement("button");
    remove.className = "danger";
    remove.textContent = "Remove component";
    remove.addEventListener("click", () => store.removeComponent(placement.instanceId));
    container.appendChild(remove);
  }

  return {
    render,
    focusLabel(): void {
      labelInput?.focus();
      labelInput?.select();
    },
    setDescriptors,
  };
}
