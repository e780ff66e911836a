/**
 * SVG board rendering.
 *
 * The board is a direct picture of the server's state view: a vertex is
 * clickable exactly when the server listed it as legal, shaded exactly
 * when the server reported a color, and ringed when the server flagged
 * it protected. No legality or coloring is computed here.
 */

import type { Evaluation, StateView } from "./types.js";

export interface BoardVertex {
  id: number;
  x: number;
  y: number;
  color: number | null;
  isProtected: boolean;
  legal: boolean;
  label: string | null;
  evalValue: number | null;
}

export interface BoardView {
  vertices: BoardVertex[];
  edges: [number, number][];
  mover: "Alice" | "Bob";
  round: number;
  variant: string;
  terminal: boolean;
}

const SVG_NS = "http://www.w3.org/2000/svg";

// one fill per round index, cycling past the palette's end
const ROUND_FILLS = [
  "#4e9a06",
  "#3465a4",
  "#cc0000",
  "#f57900",
  "#75507b",
  "#c17d11",
  "#06989a",
  "#d3d700",
];

export function roundFill(color: number): string {
  return ROUND_FILLS[(color - 1) % ROUND_FILLS.length];
}

/** Join the server's state, layout, labels, and optional eval into one view. */
export function buildBoardView(
  state: StateView,
  layout: [number, number][],
  labels: (string | null)[] | null,
  edges: [number, number][],
  evaluations: Evaluation[] | null,
): BoardView {
  const protectedSet = new Set(state.protected);
  const legalSet = new Set(state.legalVertices);
  const evalByVertex = new Map<number, number>();
  if (evaluations) {
    for (const entry of evaluations) {
      if (entry.move !== "pass") {
        evalByVertex.set(entry.move, entry.value);
      }
    }
  }
  const vertices: BoardVertex[] = [];
  for (let id = 0; id < state.n; id++) {
    const [x, y] = layout[id];
    vertices.push({
      id,
      x,
      y,
      color: state.colors[id],
      isProtected: protectedSet.has(id),
      legal: legalSet.has(id),
      label: labels ? labels[id] : null,
      evalValue: evalByVertex.has(id) ? evalByVertex.get(id)! : null,
    });
  }
  return {
    vertices,
    edges,
    mover: state.mover,
    round: state.round,
    variant: state.variant,
    terminal: state.terminal,
  };
}

function vertexRadius(n: number): number {
  if (n <= 12) return 0.09;
  if (n <= 40) return 0.06;
  return 0.035;
}

/** Redraw the whole board inside the given <svg> element. */
export function renderBoard(
  svg: SVGSVGElement,
  view: BoardView,
  onVertexClick: (id: number) => void,
): void {
  svg.setAttribute("viewBox", "-1.25 -1.25 2.5 2.5");
  svg.replaceChildren();

  const radius = vertexRadius(view.vertices.length);
  const edgeLayer = document.createElementNS(SVG_NS, "g");
  for (const [a, b] of view.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    const va = view.vertices[a];
    const vb = view.vertices[b];
    line.setAttribute("x1", String(va.x));
    line.setAttribute("y1", String(va.y));
    line.setAttribute("x2", String(vb.x));
    line.setAttribute("y2", String(vb.y));
    line.setAttribute("class", "edge");
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const vertexLayer = document.createElementNS(SVG_NS, "g");
  for (const vertex of view.vertices) {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("data-vertex", String(vertex.id));

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(vertex.x));
    circle.setAttribute("cy", String(vertex.y));
    circle.setAttribute("r", String(radius));
    const classes = ["vertex"];
    if (vertex.color !== null) {
      classes.push("colored");
      circle.setAttribute("fill", roundFill(vertex.color));
      group.setAttribute("data-color", String(vertex.color));
    } else {
      circle.setAttribute("fill", "#ffffff");
    }
    if (vertex.isProtected) {
      classes.push("protected");
      group.setAttribute("data-protected", "true");
    }
    if (vertex.legal && !view.terminal) {
      classes.push("legal");
      group.setAttribute("data-legal", "true");
      group.addEventListener("click", () => onVertexClick(vertex.id));
    }
    circle.setAttribute("class", classes.join(" "));
    const tooltip = document.createElementNS(SVG_NS, "title");
    tooltip.textContent = vertex.label
      ? `${vertex.id} (${vertex.label})`
      : String(vertex.id);
    group.appendChild(circle);
    group.appendChild(tooltip);

    const idText = document.createElementNS(SVG_NS, "text");
    idText.setAttribute("x", String(vertex.x));
    idText.setAttribute("y", String(vertex.y));
    idText.setAttribute("class", "vertex-id");
    idText.setAttribute("font-size", String(radius));
    idText.textContent = String(vertex.id);
    group.appendChild(idText);

    if (vertex.evalValue !== null) {
      const badge = document.createElementNS(SVG_NS, "g");
      badge.setAttribute("class", "eval-badge");
      badge.setAttribute("data-eval", String(vertex.evalValue));
      const bubble = document.createElementNS(SVG_NS, "circle");
      bubble.setAttribute("cx", String(vertex.x + radius));
      bubble.setAttribute("cy", String(vertex.y - radius));
      bubble.setAttribute("r", String(radius * 0.72));
      const value = document.createElementNS(SVG_NS, "text");
      value.setAttribute("x", String(vertex.x + radius));
      value.setAttribute("y", String(vertex.y - radius));
      value.setAttribute("class", "eval-value");
      value.setAttribute("font-size", String(radius));
      value.textContent = String(vertex.evalValue);
      badge.appendChild(bubble);
      badge.appendChild(value);
      group.appendChild(badge);
    }

    vertexLayer.appendChild(group);
  }
  svg.appendChild(vertexLayer);
}
