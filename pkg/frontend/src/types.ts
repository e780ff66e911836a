/**
 * Wire types for the game service.
 *
 * These mirror the JSON the service emits, field for field. The client
 * never derives game facts locally; everything rendered comes from a
 * StateView delivered by the server.
 */

export type Role = "Alice" | "Bob" | "observer";

export type VariantTag = "A" | "B" | "AB" | "BA" | "AliceSkip";

export const VARIANT_TAGS: VariantTag[] = ["A", "B", "AB", "BA", "AliceSkip"];

/** One played action as it appears in a transcript. */
export interface TranscriptRecord {
  actor: "Alice" | "Bob" | null;
  action: number | "pass" | "round_end";
  round: number;
}

export interface StateView {
  graph6: string;
  n: number;
  variant: VariantTag;
  humanRole: Role;
  colors: (number | null)[];
  uncolored: number[];
  protected: number[];
  mover: "Alice" | "Bob";
  fresh: boolean;
  round: number;
  legalVertices: number[];
  passAllowed: boolean;
  terminal: boolean;
  roundsStarted: number;
  roundsUsed: number;
}

/** Common envelope on every session response. */
export interface SessionBody {
  id: string;
  actionCounter: number;
  state: StateView;
}

/** Create and get responses additionally carry presentation data. */
export interface SessionDetail extends SessionBody {
  layout: [number, number][];
  labels: (string | null)[] | null;
}

export interface EngineReply extends SessionBody {
  feasible: true;
  value: number;
  move: number | "pass";
}

export interface InfeasibleReply {
  id: string;
  actionCounter: number;
  feasible: false;
  reason: string;
  detail: string;
}

export interface Evaluation {
  move: number | "pass";
  value: number;
}

export interface EvalReply {
  id: string;
  actionCounter: number;
  feasible: true;
  mover: "Alice" | "Bob";
  evaluations: Evaluation[];
}

export interface TranscriptBody {
  id: string;
  actionCounter: number;
  graph6: string;
  variant: VariantTag;
  records: TranscriptRecord[];
}

export interface FamilySummary {
  name: string;
  params: string[];
  description: string;
}

export interface FamilyDetail {
  name: string;
  params: Record<string, number>;
  graph6: string;
  n: number;
  edges: [number, number][];
  layout: [number, number][];
  labels: (string | null)[] | null;
  cliquePart?: number[];
  independentPart?: number[];
}

export interface ErrorBody {
  error: {
    code: string;
    message: string;
    reason?: string;
    protecting?: number[];
  };
}

export type NewGameSpec =
  | { graph6: string; variant: VariantTag; humanRole: Role }
  | {
      family: { name: string; params: Record<string, number> };
      variant: VariantTag;
      humanRole: Role;
    };
