/**
 * Session controller: owns the dialogue with the service and keeps the
 * page in step with it.
 *
 * Every displayed fact is re-read from a server response. Client-side
 * guards (ignoring clicks on non-legal vertices, disabling buttons while
 * a call is in flight) only reduce traffic; the server remains the
 * authority and its rejections are shown verbatim.
 */

import { ApiClient, ApiError } from "./api.js";
import { buildBoardView, renderBoard } from "./board.js";
import { decodeGraph6 } from "./graph6.js";
import type {
  Evaluation,
  NewGameSpec,
  SessionBody,
  StateView,
  TranscriptBody,
} from "./types.js";

export interface BoardElements {
  board: SVGSVGElement;
  banner: HTMLElement;
  round: HTMLElement;
  variant: HTMLElement;
  status: HTMLElement;
  passButton: HTMLButtonElement;
  evalButton: HTMLButtonElement;
  stepButton: HTMLButtonElement;
  downloadButton: HTMLButtonElement;
}

export type FileSaver = (filename: string, text: string) => void;

export class SessionController {
  private sessionId: string | null = null;
  private state: StateView | null = null;
  private layout: [number, number][] = [];
  private labels: (string | null)[] | null = null;
  private edges: [number, number][] = [];
  private actionCounter = 0;
  private evaluations: Evaluation[] | null = null;
  private busy = false;

  constructor(
    private readonly api: ApiClient,
    private readonly el: BoardElements,
    private readonly saveFile: FileSaver,
  ) {
    this.el.passButton.addEventListener("click", () => {
      void this.pass();
    });
    this.el.evalButton.addEventListener("click", () => {
      void this.toggleEval();
    });
    this.el.stepButton.addEventListener("click", () => {
      void this.stepEngine();
    });
    this.el.downloadButton.addEventListener("click", () => {
      void this.download();
    });
  }

  getState(): StateView | null {
    return this.state;
  }

  getActionCounter(): number {
    return this.actionCounter;
  }

  getSessionId(): string | null {
    return this.sessionId;
  }

  /** Create a session and, when the engine starts, let it open the game. */
  async newGame(spec: NewGameSpec): Promise<void> {
    this.setStatus("");
    const detail = await this.guard(() => this.api.createSession(spec));
    if (!detail) return;
    this.sessionId = detail.id;
    this.layout = detail.layout;
    this.labels = detail.labels;
    this.edges = decodeGraph6(detail.state.graph6).edges;
    this.accept(detail);
    await this.playEngineTurns();
  }

  /** Submit a vertex for the human side. Non-legal clicks never get here. */
  async clickVertex(id: number): Promise<void> {
    await this.submit(id);
  }

  async pass(): Promise<void> {
    await this.submit("pass");
  }

  /**
   * Send a move without any client-side legality screening. The normal
   * click path only offers legal vertices; this is the raw submission
   * used by it, kept public so the server-side rejection contract can
   * be exercised with the guards off.
   */
  async submit(move: number | "pass"): Promise<void> {
    if (!this.sessionId || this.busy) return;
    const body = await this.guard(() =>
      this.api.submitMove(this.sessionId!, move),
    );
    if (!body) return;
    this.accept(body);
    await this.playEngineTurns();
  }

  /** One engine reply on demand; used in observer mode. */
  async stepEngine(): Promise<void> {
    if (!this.sessionId || this.busy || !this.state) return;
    if (this.state.terminal) return;
    const reply = await this.guard(() => this.api.engineMove(this.sessionId!));
    if (!reply) return;
    if (!reply.feasible) {
      this.actionCounter = reply.actionCounter;
      this.setStatus(`${reply.reason}: ${reply.detail}`);
      return;
    }
    this.accept(reply);
  }

  /** Fetch per-move values for this turn, or hide them if already shown. */
  async toggleEval(): Promise<void> {
    if (!this.sessionId || this.busy || !this.state) return;
    if (this.evaluations) {
      this.evaluations = null;
      this.render();
      return;
    }
    const reply = await this.guard(() => this.api.evaluate(this.sessionId!));
    if (!reply) return;
    if (!reply.feasible) {
      this.setStatus(`${reply.reason}: ${reply.detail}`);
      return;
    }
    this.evaluations = reply.evaluations;
    this.render();
  }

  async fetchTranscript(): Promise<TranscriptBody | null> {
    if (!this.sessionId) return null;
    return this.api.getTranscript(this.sessionId);
  }

  async download(): Promise<void> {
    const transcript = await this.fetchTranscript();
    if (!transcript) return;
    this.saveFile(
      `icg-${transcript.id.slice(0, 8)}.json`,
      JSON.stringify(transcript, null, 2),
    );
  }

  /** Re-read the session after a stale-counter or out-of-turn signal. */
  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    const detail = await this.guard(() => this.api.getSession(this.sessionId!));
    if (!detail) return;
    this.layout = detail.layout;
    this.labels = detail.labels;
    this.accept(detail);
  }

  private isHumanTurn(): boolean {
    return this.state !== null && this.state.humanRole === this.state.mover;
  }

  private engineMayAutoplay(): boolean {
    return (
      this.state !== null &&
      !this.state.terminal &&
      this.state.humanRole !== "observer" &&
      this.state.humanRole !== this.state.mover
    );
  }

  private async playEngineTurns(): Promise<void> {
    while (this.engineMayAutoplay()) {
      const reply = await this.guard(() =>
        this.api.engineMove(this.sessionId!),
      );
      if (!reply) return;
      if (!reply.feasible) {
        this.actionCounter = reply.actionCounter;
        this.setStatus(`${reply.reason}: ${reply.detail}`);
        return;
      }
      this.accept(reply);
    }
  }

  /**
   * Take a response as the new truth. A counter that moved further than
   * this client's own action means another writer touched the session,
   * so the next accept comes from a full refetch rather than a resubmit.
   */
  private accept(body: SessionBody): void {
    const expected = this.actionCounter;
    this.actionCounter = body.actionCounter;
    this.state = body.state;
    this.evaluations = null;
    this.render();
    if (body.actionCounter > expected + 1) {
      void this.refresh();
    }
  }

  private async guard<T>(call: () => Promise<T>): Promise<T | null> {
    this.busy = true;
    try {
      return await call();
    } catch (error) {
      if (error instanceof ApiError) {
        this.setStatus(error.message, error.code);
        if (error.code === "out_of_turn") {
          this.busy = false;
          await this.refresh();
        }
        return null;
      }
      this.setStatus(String(error));
      return null;
    } finally {
      this.busy = false;
    }
  }

  private setStatus(message: string, code?: string): void {
    this.el.status.textContent = message;
    if (code) {
      this.el.status.setAttribute("data-code", code);
    } else {
      this.el.status.removeAttribute("data-code");
    }
  }

  private render(): void {
    const state = this.state;
    if (!state) return;
    const view = buildBoardView(
      state,
      this.layout,
      this.labels,
      this.edges,
      this.evaluations,
    );
    renderBoard(this.el.board, view, (id) => {
      if (this.isHumanTurn()) {
        void this.clickVertex(id);
      }
    });

    if (state.terminal) {
      this.el.banner.textContent = `game over, colors used: ${state.roundsUsed}`;
    } else {
      const seat =
        state.mover === state.humanRole
          ? "you"
          : state.humanRole === "observer"
            ? "step the engine"
            : "engine";
      this.el.banner.textContent = `${state.mover} to move (${seat})`;
    }
    this.el.round.textContent = `round ${state.round}`;
    this.el.variant.textContent = state.variant;

    this.el.passButton.disabled = !(
      state.passAllowed &&
      this.isHumanTurn() &&
      !state.terminal
    );
    this.el.evalButton.disabled = state.terminal;
    this.el.stepButton.disabled =
      state.terminal || state.humanRole !== "observer";
    this.el.downloadButton.disabled = false;
  }
}
