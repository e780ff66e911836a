/**
 * Test fixtures: a real service process and a page loaded from the
 * shipped index.html, driven through DOM events only.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { setupApp, type AppHandles } from "../src/app.js";
import type { FileSaver } from "../src/controller.js";

export interface ServiceHandle {
  base: string;
  stop: () => Promise<void>;
}

/** Start `icg serve` on a test port and wait until it answers. */
export async function startService(): Promise<ServiceHandle> {
  const port = 8400 + (process.pid % 400);
  const base = `http://127.0.0.1:${port}`;
  const child: ChildProcess = spawn("icg", ["serve", "--port", String(port)], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  let output = "";
  child.stdout?.on("data", (chunk) => (output += chunk));
  child.stderr?.on("data", (chunk) => (output += chunk));

  const deadline = Date.now() + 30_000;
  for (;;) {
    if (child.exitCode !== null) {
      throw new Error(`service exited early:\n${output}`);
    }
    try {
      const probe = await fetch(`${base}/api/families`);
      if (probe.ok) break;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) {
      child.kill();
      throw new Error(`service did not come up in time:\n${output}`);
    }
    await sleep(100);
  }

  return {
    base,
    stop: () =>
      new Promise<void>((resolve) => {
        child.once("exit", () => resolve());
        child.kill("SIGTERM");
        setTimeout(() => {
          if (child.exitCode === null) child.kill("SIGKILL");
        }, 3000).unref();
      }),
  };
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Poll until the page reaches the expected shape. */
export async function waitFor(
  predicate: () => boolean,
  what: string,
  timeoutMs = 20_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!predicate()) {
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await sleep(20);
  }
}

export interface PageHandle extends AppHandles {
  saved: { filename: string; text: string }[];
}

/** Load the real page markup and wire the app against a live service. */
export async function loadPage(base: string): Promise<PageHandle> {
  // import.meta.url carries jsdom's http scheme here, so resolve from
  // the package root instead
  const html = readFileSync(resolve(process.cwd(), "static/index.html"), "utf8");
  document.documentElement.innerHTML = html;
  const saved: { filename: string; text: string }[] = [];
  const saver: FileSaver = (filename, text) => {
    saved.push({ filename, text });
  };
  const handles = await setupApp(document, base, saver);
  return { ...handles, saved };
}

export function click(selector: string): void {
  const node = document.querySelector(selector);
  if (!node) {
    throw new Error(`nothing matches ${selector}`);
  }
  node.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

export function bannerText(): string {
  return document.getElementById("banner")?.textContent ?? "";
}

export function statusText(): string {
  return document.getElementById("status")?.textContent ?? "";
}

export function isHumanTurn(): boolean {
  return bannerText().includes("(you)");
}

export function isGameOver(): boolean {
  return bannerText().startsWith("game over");
}
