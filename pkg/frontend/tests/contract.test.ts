/**
 * Contract tests against a live service process.
 *
 * The page is driven exclusively through DOM events (the UI harness),
 * and every assertion about game facts is checked against what the
 * service itself reports.
 */

import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";
import type { SessionBody, StateView, TranscriptBody } from "../src/types.js";
import {
  bannerText,
  click,
  isGameOver,
  isHumanTurn,
  loadPage,
  startService,
  statusText,
  waitFor,
  type PageHandle,
  type ServiceHandle,
} from "./harness.js";

let service: ServiceHandle;

beforeAll(async () => {
  service = await startService();
});

afterAll(async () => {
  await service.stop();
});

async function postJson<T>(url: string, payload: unknown): Promise<T> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
  if (!response.ok) {
    throw new Error(`${url} -> ${response.status}`);
  }
  return (await response.json()) as T;
}

/** Alice's side of the script: open on vertex 2, then lowest legal. */
function scriptedChoice(first: boolean, legal: number[]): number {
  return first ? 2 : Math.min(...legal);
}

/**
 * The same scripted game played with bare HTTP calls and no UI at all;
 * the reference the harness transcript must match byte for byte.
 */
async function serviceOnlyReplay(base: string): Promise<TranscriptBody> {
  const created = await postJson<SessionBody>(`${base}/api/session`, {
    graph6: "DhC",
    variant: "A",
    humanRole: "Alice",
  });
  let state: StateView = created.state;
  let first = true;
  while (!state.terminal) {
    if (state.mover === "Alice") {
      const vertex = scriptedChoice(first, state.legalVertices);
      first = false;
      const body = await postJson<SessionBody>(
        `${base}/api/session/${created.id}/move`,
        { vertex },
      );
      state = body.state;
    } else {
      const body = await postJson<SessionBody>(
        `${base}/api/session/${created.id}/engine`,
        {},
      );
      state = body.state;
    }
  }
  const transcript = await fetch(`${base}/api/session/${created.id}/transcript`);
  return (await transcript.json()) as TranscriptBody;
}

function legalVertexIds(): number[] {
  return Array.from(document.querySelectorAll("[data-legal]")).map((node) =>
    Number(node.getAttribute("data-vertex")),
  );
}

function fillPastedForm(graph6: string, variant: string, role: string): void {
  const familySelect = document.getElementById("family") as HTMLSelectElement;
  familySelect.value = "__graph6__";
  familySelect.dispatchEvent(new Event("change", { bubbles: true }));
  (document.getElementById("graph6") as HTMLInputElement).value = graph6;
  (document.getElementById("variant-select") as HTMLSelectElement).value =
    variant;
  (document.getElementById("role-select") as HTMLSelectElement).value = role;
}

async function startPastedGame(
  page: PageHandle,
  graph6: string,
  variant: string,
  role: string,
): Promise<void> {
  fillPastedForm(graph6, variant, role);
  click("#start");
  await waitFor(
    () => page.controller.getSessionId() !== null,
    "the session to be created",
  );
}

let page: PageHandle;

beforeEach(async () => {
  page = await loadPage(service.base);
});

describe("scripted session parity", () => {
  it("plays P_5 variant A through the page and matches the service-only replay", async () => {
    await startPastedGame(page, "DhC", "A", "Alice");
    await waitFor(isHumanTurn, "Alice's opening turn");

    let first = true;
    while (!isGameOver()) {
      const before = page.controller.getActionCounter();
      const vertex = scriptedChoice(first, legalVertexIds());
      first = false;
      click(`[data-vertex="${vertex}"]`);
      await waitFor(
        () =>
          page.controller.getActionCounter() > before &&
          (isHumanTurn() || isGameOver()),
        `the board to settle after playing ${vertex}`,
      );
    }

    expect(bannerText()).toBe("game over, colors used: 2");

    click("#download");
    await waitFor(() => page.saved.length > 0, "the transcript download");
    const uiTranscript = JSON.parse(page.saved[0].text) as TranscriptBody;

    const replay = await serviceOnlyReplay(service.base);
    expect(uiTranscript.records).toEqual(replay.records);
    expect(uiTranscript.graph6).toBe(replay.graph6);
    expect(uiTranscript.variant).toBe(replay.variant);
    expect(uiTranscript.actionCounter).toBe(replay.actionCounter);
  });
});

describe("eval overlay", () => {
  it("badges the opening P_5 values and shows 2 on vertex 2", async () => {
    await startPastedGame(page, "DhC", "A", "Alice");
    await waitFor(isHumanTurn, "Alice's opening turn");

    click("#eval");
    await waitFor(
      () => document.querySelectorAll("[data-eval]").length === 5,
      "eval badges on every vertex",
    );

    const badge = document.querySelector('[data-vertex="2"] [data-eval]');
    expect(badge?.getAttribute("data-eval")).toBe("2");
    expect(badge?.querySelector(".eval-value")?.textContent).toBe("2");
    for (const id of [0, 1, 3, 4]) {
      expect(
        document
          .querySelector(`[data-vertex="${id}"] [data-eval]`)
          ?.getAttribute("data-eval"),
      ).toBe("3");
    }
  });

  it("clears badges after a move; the overlay is opt-in per turn", async () => {
    await startPastedGame(page, "DhC", "A", "Alice");
    await waitFor(isHumanTurn, "Alice's opening turn");
    click("#eval");
    await waitFor(
      () => document.querySelectorAll("[data-eval]").length === 5,
      "eval badges",
    );

    const before = page.controller.getActionCounter();
    click('[data-vertex="2"]');
    await waitFor(
      () => page.controller.getActionCounter() > before && isHumanTurn(),
      "the engine reply",
    );
    expect(document.querySelectorAll("[data-eval]")).toHaveLength(0);
  });

  it("reports the structured infeasible notice on an oversized board", async () => {
    const familySelect = document.getElementById("family") as HTMLSelectElement;
    familySelect.value = "subset_blocks";
    familySelect.dispatchEvent(new Event("change", { bubbles: true }));
    const kInput = document.querySelector(
      '#family-params input[name="k"]',
    ) as HTMLInputElement;
    kInput.value = "2";
    (document.getElementById("role-select") as HTMLSelectElement).value =
      "observer";
    click("#start");
    await waitFor(
      () => page.controller.getSessionId() !== null,
      "the session to be created",
    );

    click("#eval");
    await waitFor(
      () => statusText().includes("exact solve infeasible"),
      "the infeasible notice",
    );
    expect(document.querySelectorAll("[data-eval]")).toHaveLength(0);
  });
});

describe("server-side rejection with client guards disabled", () => {
  it("rejects a protected vertex with a structured error and leaves the session unchanged", async () => {
    await startPastedGame(page, "Ch", "A", "Bob");
    await waitFor(isHumanTurn, "the engine opening");

    const counterBefore = page.controller.getActionCounter();
    expect(counterBefore).toBe(1);

    // vertex 1 was the engine's opening move, so its neighbor 0 is
    // protected; submit() bypasses the legal-click screening on purpose
    await page.controller.submit(0);

    expect(statusText()).toContain("protected");
    expect(
      document.getElementById("status")?.getAttribute("data-code"),
    ).toBe("illegal_move");
    expect(page.controller.getActionCounter()).toBe(counterBefore);
    expect(
      document.querySelector('[data-vertex="0"]')?.getAttribute("data-color"),
    ).toBeNull();
    expect(isHumanTurn()).toBe(true);

    // the same rejection seen raw on the wire
    const response = await fetch(
      `${service.base}/api/session/${page.controller.getSessionId()}/move`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ vertex: 0 }),
      },
    );
    expect(response.status).toBe(409);
    const body = await response.json();
    expect(body.error.code).toBe("illegal_move");
    expect(body.error.reason).toBe("protected");
    expect(body.error.protecting).toEqual([1]);
  });

  it("rejects an observer submission as out of turn", async () => {
    await startPastedGame(page, "DhC", "A", "observer");
    await waitFor(
      () => bannerText().includes("step the engine"),
      "the observer banner",
    );

    await page.controller.submit(0);
    expect(
      document.getElementById("status")?.getAttribute("data-code"),
    ).toBe("out_of_turn");
    expect(page.controller.getActionCounter()).toBe(0);

    click("#engine-step");
    await waitFor(
      () => page.controller.getActionCounter() === 1,
      "the stepped engine move",
    );
    expect(document.querySelectorAll("[data-color]")).toHaveLength(1);
  });
});

describe("new-game form", () => {
  it("starts Cycle(6) variant B with the engine opening as Bob", async () => {
    const familySelect = document.getElementById("family") as HTMLSelectElement;
    familySelect.value = "cycle";
    familySelect.dispatchEvent(new Event("change", { bubbles: true }));
    const nInput = document.querySelector(
      '#family-params input[name="n"]',
    ) as HTMLInputElement;
    nInput.value = "6";
    (document.getElementById("variant-select") as HTMLSelectElement).value =
      "B";
    (document.getElementById("role-select") as HTMLSelectElement).value =
      "Alice";
    click("#start");

    await waitFor(isHumanTurn, "Bob's engine opening to land");
    expect(document.querySelectorAll("[data-vertex]")).toHaveLength(6);
    expect(document.querySelectorAll("[data-color]")).toHaveLength(1);
    expect(document.getElementById("variant")?.textContent).toBe("B");
    expect(document.getElementById("round")?.textContent).toBe("round 1");
  });

  it("surfaces a bad graph6 paste verbatim", async () => {
    fillPastedForm("", "A", "Alice");
    click("#start");
    await waitFor(
      () => statusText().length > 0,
      "the service error to surface",
    );
    expect(
      document.getElementById("status")?.getAttribute("data-code"),
    ).toBe("bad_spec");
    expect(page.controller.getSessionId()).toBeNull();
  });
});
