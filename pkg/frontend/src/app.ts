/**
 * Page wiring: new-game form, board elements, and the session controller.
 *
 * Kept separate from the entry point so tests can stand the page up
 * inside any document and drive it through DOM events.
 */

import { ApiClient } from "./api.js";
import { SessionController, type FileSaver } from "./controller.js";
import { VARIANT_TAGS, type NewGameSpec, type Role } from "./types.js";

const GRAPH6_CHOICE = "__graph6__";

const PARAM_DEFAULTS: Record<string, number> = {
  n: 6,
  k: 2,
  arity: 2,
  depth: 3,
  clique_size: 3,
  indep_size: 3,
  cross_edges: 2,
  seed: 0,
};

export interface AppHandles {
  controller: SessionController;
  api: ApiClient;
}

function mustFind<T extends Element>(doc: Document, id: string): T {
  const node = doc.getElementById(id);
  if (!node) {
    throw new Error(`page is missing #${id}`);
  }
  return node as unknown as T;
}

function browserSaveFile(doc: Document): FileSaver {
  return (filename, text) => {
    const blob = new Blob([text], { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const anchor = doc.createElement("a");
    anchor.href = url;
    anchor.download = filename;
    anchor.click();
    URL.revokeObjectURL(url);
  };
}

function renderParamInputs(
  doc: Document,
  container: HTMLElement,
  params: string[],
): void {
  container.replaceChildren();
  for (const name of params) {
    const label = doc.createElement("label");
    label.textContent = `${name} `;
    const input = doc.createElement("input");
    input.type = "number";
    input.name = name;
    input.value = String(PARAM_DEFAULTS[name] ?? 3);
    label.appendChild(input);
    container.appendChild(label);
  }
}

function readParams(container: HTMLElement): Record<string, number> {
  const params: Record<string, number> = {};
  for (const input of container.querySelectorAll("input")) {
    params[input.name] = Number(input.value);
  }
  return params;
}

/** Populate the form, attach handlers, and return the live controller. */
export async function setupApp(
  doc: Document,
  baseUrl = "",
  saveFile?: FileSaver,
): Promise<AppHandles> {
  const api = new ApiClient(baseUrl);
  const controller = new SessionController(
    api,
    {
      board: mustFind(doc, "board"),
      banner: mustFind(doc, "banner"),
      round: mustFind(doc, "round"),
      variant: mustFind(doc, "variant"),
      status: mustFind(doc, "status"),
      passButton: mustFind(doc, "pass"),
      evalButton: mustFind(doc, "eval"),
      stepButton: mustFind(doc, "engine-step"),
      downloadButton: mustFind(doc, "download"),
    },
    saveFile ?? browserSaveFile(doc),
  );

  const familySelect = mustFind<HTMLSelectElement>(doc, "family");
  const familyDesc = mustFind<HTMLElement>(doc, "family-desc");
  const paramBox = mustFind<HTMLElement>(doc, "family-params");
  const graph6Row = mustFind<HTMLElement>(doc, "graph6-row");
  const graph6Input = mustFind<HTMLInputElement>(doc, "graph6");
  const variantSelect = mustFind<HTMLSelectElement>(doc, "variant-select");
  const roleSelect = mustFind<HTMLSelectElement>(doc, "role-select");
  const startButton = mustFind<HTMLButtonElement>(doc, "start");

  for (const tag of VARIANT_TAGS) {
    const option = doc.createElement("option");
    option.value = tag;
    option.textContent = tag;
    variantSelect.appendChild(option);
  }

  const { families } = await api.listFamilies();
  const paramsByFamily = new Map<string, string[]>();
  const descriptions = new Map<string, string>();
  for (const family of families) {
    paramsByFamily.set(family.name, family.params);
    descriptions.set(family.name, family.description);
    const option = doc.createElement("option");
    option.value = family.name;
    option.textContent = family.name;
    familySelect.appendChild(option);
  }
  const pasteOption = doc.createElement("option");
  pasteOption.value = GRAPH6_CHOICE;
  pasteOption.textContent = "paste graph6";
  familySelect.appendChild(pasteOption);

  const syncFamilyChoice = () => {
    const choice = familySelect.value;
    if (choice === GRAPH6_CHOICE) {
      graph6Row.hidden = false;
      paramBox.hidden = true;
      familyDesc.textContent = "";
      return;
    }
    graph6Row.hidden = true;
    paramBox.hidden = false;
    familyDesc.textContent = descriptions.get(choice) ?? "";
    renderParamInputs(doc, paramBox, paramsByFamily.get(choice) ?? []);
  };
  familySelect.addEventListener("change", syncFamilyChoice);
  familySelect.value = families.length > 0 ? "path" : GRAPH6_CHOICE;
  syncFamilyChoice();

  startButton.addEventListener("click", () => {
    const variant = variantSelect.value as NewGameSpec["variant"];
    const humanRole = roleSelect.value as Role;
    const spec: NewGameSpec =
      familySelect.value === GRAPH6_CHOICE
        ? { graph6: graph6Input.value.trim(), variant, humanRole }
        : {
            family: {
              name: familySelect.value,
              params: readParams(paramBox),
            },
            variant,
            humanRole,
          };
    void controller.newGame(spec);
  });

  return { controller, api };
}
