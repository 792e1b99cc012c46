// Generated-output browser: the manifest paths as a collapsible tree,
// with a click-to-view text pane.

export interface FileTreeHandle {
  show(paths: string[]): void;
  clear(): void;
}

interface TreeNode {
  children: Map<string, TreeNode>;
  isFile: boolean;
}

export function buildTree(paths: string[]): TreeNode {
  const root: TreeNode = { children: new Map(), isFile: false };
  for (const path of paths) {
    let node = root;
    const parts = path.split("/");
    parts.forEach((part, index) => {
      if (!node.children.has(part)) {
        node.children.set(part, { children: new Map(), isFile: false });
      }
      node = node.children.get(part)!;
      if (index === parts.length - 1) node.isFile = true;
    });
  }
  return root;
}

export function setupFileTree(
  container: HTMLElement,
  openFile: (path: string) => Promise<string>,
): FileTreeHandle {
  container.classList.add("filetree");
  container.innerHTML = `
    <div class="filetree-list"></div>
    <pre class="filetree-view" hidden></pre>
  `;
  const list = container.querySelector<HTMLElement>(".filetree-list")!;
  const view = container.querySelector<HTMLPreElement>(".filetree-view")!;

  function renderNode(node: TreeNode, prefix: string, parent: HTMLElement): void {
    const names = [...node.children.keys()].sort((a, b) => {
      const aDir = !node.children.get(a)!.isFile;
      const bDir = !node.children.get(b)!.isFile;
      if (aDir !== bDir) return aDir ? -1 : 1;  // directories first
      return a.localeCompare(b);
    });
    for (const name of names) {
      const child = node.children.get(name)!;
      const path = prefix ? `${prefix}/${name}` : name;
      if (child.children.size > 0) {
        const details = document.createElement("details");
        details.open = true;
        const summary = document.createElement("summary");
        summary.textContent = name + "/";
        details.appendChild(summary);
        const inner = document.createElement("div");
        inner.className = "tree-indent";
        details.appendChild(inner);
        renderNode(child, path, inner);
        parent.appendChild(details);
      } else {
        const file = document.createElement("div");
        file.className = "tree-file";
        file.textContent = name;
        file.addEventListener("click", async () => {
          list.querySelectorAll(".tree-file.open").forEach((el) => el.classList.remove("open"));
          file.classList.add("open");
          view.hidden = false;
          view.textContent = "loading...";
          try {
            view.textContent = await openFile(path);
          } catch (error) {
            view.textContent = `cannot load ${path}: ${error}`;
          }
        });
        parent.appendChild(file);
      }
    }
  }

  return {
    show(paths: string[]) {
      list.innerHTML = "";
      view.hidden = true;
      view.textContent = "";
      renderNode(buildTree(paths), "", list);
    },
    clear() {
      list.innerHTML = `<div class="filetree-empty">Generate to browse the output tree.</div>`;
      view.hidden = true;
    },
  };
}
