// Client-side mirror of the FUI document model and its canonical XML form.
// The serializer matches the server's canonical output byte for byte, so a
// document saved by the UI and re-fetched after server canonicalization
// compares clean. The parser is deliberately small: it accepts exactly the
// FUI element/attribute vocabulary and rejects everything else.

export interface Placement {
  instanceId: string;
  ref: string;
  x: number;
  y: number;
  w: number;
  h: number;
  label: string;
  props: Record<string, string>;
  action: string | null;
}

export interface ScreenDef {
  id: string;
  title: string;
  width: number;
  height: number;
  components: Placement[];
}

export interface FieldMapDef {
  instanceId: string;
  column: string;
  columnType: string;
}

export interface BindingDef {
  screenId: string;
  entityName: string;
  primaryKey: string;
  fieldMaps: FieldMapDef[];
}

export interface FuiDocument {
  version: number;
  project: string;
  screens: ScreenDef[];
  bindings: BindingDef[];
}

export class FuiFormatError extends Error {}

const SLUG_RE = /^[a-z0-9-]+$/;

export function isSlug(value: string): boolean {
  return SLUG_RE.test(value);
}

export function emptyDocument(project: string): FuiDocument {
  return { version: 1, project, screens: [], bindings: [] };
}

export function cloneDocument(doc: FuiDocument): FuiDocument {
  return {
    version: doc.version,
    project: doc.project,
    screens: doc.screens.map((screen) => ({
      ...screen,
      components: screen.components.map((p) => ({ ...p, props: { ...p.props } })),
    })),
    bindings: doc.bindings.map((binding) => ({
      ...binding,
      fieldMaps: binding.fieldMaps.map((m) => ({ ...m })),
    })),
  };
}

export function documentsEqual(a: FuiDocument, b: FuiDocument): boolean {
  return serializeFui(a) === serializeFui(b);
}

// -- serialization -----------------------------------------------------------

function escapeAttr(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/\t/g, "&#9;")
    .replace(/\n/g, "&#10;")
    .replace(/\r/g, "&#13;");
}

export function serializeFui(doc: FuiDocument): string {
  const lines: string[] = [];
  lines.push(`<fui version="${doc.version}" project="${escapeAttr(doc.project)}">`);
  for (const screen of doc.screens) {
    const head =
      `  <screen id="${escapeAttr(screen.id)}" title="${escapeAttr(screen.title)}"` +
      ` width="${screen.width}" height="${screen.height}"`;
    if (screen.components.length === 0) {
      lines.push(head + "/>");
      continue;
    }
    lines.push(head + ">");
    for (const p of screen.components) {
      let tag =
        `    <component ref="${escapeAttr(p.ref)}" id="${escapeAttr(p.instanceId)}"` +
        ` x="${p.x}" y="${p.y}" w="${p.w}" h="${p.h}" label="${escapeAttr(p.label)}"`;
      if (p.action !== null) tag += ` action="${escapeAttr(p.action)}"`;
      const propNames = Object.keys(p.props);
      if (propNames.length === 0) {
        lines.push(tag + "/>");
      } else {
        lines.push(tag + ">");
        for (const name of propNames) {
          lines.push(
            `      <prop name="${escapeAttr(name)}" value="${escapeAttr(p.props[name] ?? "")}"/>`,
          );
        }
        lines.push("    </component>");
      }
    }
    lines.push("  </screen>");
  }
  for (const binding of doc.bindings) {
    const head =
      `  <binding screen="${escapeAttr(binding.screenId)}" entity="${escapeAttr(binding.entityName)}"` +
      ` pk="${escapeAttr(binding.primaryKey)}"`;
    if (binding.fieldMaps.length === 0) {
      lines.push(head + "/>");
      continue;
    }
    lines.push(head + ">");
    for (const m of binding.fieldMaps) {
      lines.push(
        `    <map component="${escapeAttr(m.instanceId)}" column="${escapeAttr(m.column)}"` +
          ` type="${escapeAttr(m.columnType)}"/>`,
      );
    }
    lines.push("  </binding>");
  }
  lines.push("</fui>");
  return lines.join("\n") + "\n";
}

// -- parsing ------------------------------------------------------------------

interface Tag {
  name: string;
  attrs: Record<string, string>;
  selfClosing: boolean;
  closing: boolean;
}

function decodeEntities(value: string): string {
  return value.replace(/&(amp|lt|gt|quot|apos|#x?[0-9a-fA-F]+);/g, (_whole, body: string) => {
    switch (body) {
      case "amp": return "&";
      case "lt": return "<";
      case "gt": return ">";
      case "quot": return '"';
      case "apos": return "'";
    }
    const code = body.startsWith("#x") || body.startsWith("#X")
      ? parseInt(body.slice(2), 16)
      : parseInt(body.slice(1), 10);
    if (Number.isNaN(code)) throw new FuiFormatError(`bad character reference &${body};`);
    return String.fromCodePoint(code);
  });
}

class Tokenizer {
  private pos = 0;

  constructor(private readonly text: string) {}

  next(): Tag | null {
    // skip inter-element whitespace and the optional XML declaration
    while (this.pos < this.text.length) {
      const ch = this.text[this.pos];
      if (ch === "<") {
        if (this.text.startsWith("<?", this.pos)) {
          const end = this.text.indexOf("?>", this.pos);
          if (end < 0) throw new FuiFormatError("unterminated XML declaration");
          this.pos = end + 2;
          continue;
        }
        return this.readTag();
      }
      if (ch !== undefined && /\s/.test(ch)) {
        this.pos += 1;
        continue;
      }
      throw new FuiFormatError(`unexpected text content at offset ${this.pos}`);
    }
    return null;
  }

  private readTag(): Tag {
    const start = this.pos;
    const end = this.text.indexOf(">", start);
    if (end < 0) throw new FuiFormatError("unterminated tag");
    let body = this.text.slice(start + 1, end);
    this.pos = end + 1;

    const closing = body.startsWith("/");
    if (closing) body = body.slice(1);
    const selfClosing = body.endsWith("/");
    if (selfClosing) body = body.slice(0, -1);

    const nameMatch = /^[A-Za-z_][A-Za-z0-9_-]*/.exec(body);
    if (!nameMatch) throw new FuiFormatError(`bad tag near offset ${start}`);
    const name = nameMatch[0];

    const attrs: Record<string, string> = {};
    const attrRe = /([A-Za-z_][A-Za-z0-9_-]*)="([^"]*)"/g;
    let rest = body.slice(name.length);
    let match: RegExpExecArray | null;
    let consumed = 0;
    while ((match = attrRe.exec(rest)) !== null) {
      const attrName = match[1]!;
      if (attrName in attrs) throw new FuiFormatError(`duplicate attribute ${attrName}`);
      attrs[attrName] = decodeEntities(match[2]!);
      consumed = attrRe.lastIndex;
    }
    if (rest.slice(consumed).trim() !== "") {
      throw new FuiFormatError(`malformed attributes in <${name}>`);
    }
    return { name, attrs, selfClosing, closing };
  }
}

function requireAttrs(tag: Tag, required: string[], optional: string[] = []): void {
  for (const name of required) {
    if (!(name in tag.attrs)) {
      throw new FuiFormatError(`missing attribute ${name} on <${tag.name}>`);
    }
  }
  for (const name of Object.keys(tag.attrs)) {
    if (!required.includes(name) && !optional.includes(name)) {
      throw new FuiFormatError(`unknown attribute ${name} on <${tag.name}>`);
    }
  }
}

function intAttr(tag: Tag, name: string): number {
  const raw = tag.attrs[name]!;
  if (!/^-?[0-9]+$/.test(raw)) {
    throw new FuiFormatError(`attribute ${name} on <${tag.name}> must be an integer`);
  }
  return parseInt(raw, 10);
}

export function parseFui(text: string): FuiDocument {
  const tokens = new Tokenizer(text);
  const root = tokens.next();
  if (!root || root.name !== "fui" || root.closing) {
    throw new FuiFormatError("root element must be <fui>");
  }
  requireAttrs(root, ["version", "project"]);
  const doc = emptyDocument(root.attrs["project"]!);
  doc.version = intAttr(root, "version");
  if (doc.version !== 1) throw new FuiFormatError(`unsupported version ${doc.version}`);
  if (root.selfClosing) return doc;

  let tag: Tag | null;
  let current: ScreenDef | null = null;
  let currentComponent: Placement | null = null;
  let currentBinding: BindingDef | null = null;

  while ((tag = tokens.next()) !== null) {
    if (tag.closing) {
      if (tag.name === "component") currentComponent = null;
      else if (tag.name === "screen") current = null;
      else if (tag.name === "binding") currentBinding = null;
      else if (tag.name === "fui") return doc;
      else throw new FuiFormatError(`unexpected </${tag.name}>`);
      continue;
    }

    switch (tag.name) {
      case "screen": {
        if (doc.bindings.length > 0) {
          throw new FuiFormatError("<screen> must precede <binding> elements");
        }
        requireAttrs(tag, ["id", "title", "width", "height"]);
        current = {
          id: tag.attrs["id"]!,
          title: tag.attrs["title"]!,
          width: intAttr(tag, "width"),
          height: intAttr(tag, "height"),
          components: [],
        };
        doc.screens.push(current);
        if (tag.selfClosing) current = null;
        break;
      }
      case "component": {
        if (!current) throw new FuiFormatError("<component> outside <screen>");
        requireAttrs(tag, ["ref", "id", "x", "y", "w", "h", "label"], ["action"]);
        currentComponent = {
          instanceId: tag.attrs["id"]!,
          ref: tag.attrs["ref"]!,
          x: intAttr(tag, "x"),
          y: intAttr(tag, "y"),
          w: intAttr(tag, "w"),
          h: intAttr(tag, "h"),
          label: tag.attrs["label"]!,
          props: {},
          action: tag.attrs["action"] ?? null,
        };
        current.components.push(currentComponent);
        if (tag.selfClosing) currentComponent = null;
        break;
      }
      case "prop": {
        if (!currentComponent) throw new FuiFormatError("<prop> outside <component>");
        requireAttrs(tag, ["name", "value"]);
        if (!tag.selfClosing) throw new FuiFormatError("<prop> must be self-closing");
        const name = tag.attrs["name"]!;
        if (name in currentComponent.props) {
          throw new FuiFormatError(`duplicate prop ${name}`);
        }
        currentComponent.props[name] = tag.attrs["value"]!;
        break;
      }
      case "binding": {
        requireAttrs(tag, ["screen", "entity", "pk"]);
        currentBinding = {
          screenId: tag.attrs["screen"]!,
          entityName: tag.attrs["entity"]!,
          primaryKey: tag.attrs["pk"]!,
          fieldMaps: [],
        };
        doc.bindings.push(currentBinding);
        if (tag.selfClosing) currentBinding = null;
        break;
      }
      case "map": {
        if (!currentBinding) throw new FuiFormatError("<map> outside <binding>");
        requireAttrs(tag, ["component", "column", "type"]);
        if (!tag.selfClosing) throw new FuiFormatError("<map> must be self-closing");
        currentBinding.fieldMaps.push({
          instanceId: tag.attrs["component"]!,
          column: tag.attrs["column"]!,
          columnType: tag.attrs["type"]!,
        });
        break;
      }
      default:
        throw new FuiFormatError(`unknown element <${tag.name}>`);
    }
  }
  throw new FuiFormatError("missing </fui>");
}
