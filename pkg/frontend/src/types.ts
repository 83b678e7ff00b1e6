/** Payload shapes of the advisor service (JSON over HTTP). */

export interface ProbPayload {
  decimal: string;
  numerator: number;
  denominator: number;
}

export type AdviceAction = "continue" | "stop" | "forced-continue";

export interface Advice {
  state: { lid: number; mover: number; opponent: number };
  action: AdviceAction;
  tie: boolean;
  p_continue: ProbPayload;
  p_stop: ProbPayload;
  p_win: ProbPayload;
}

export interface TableEntry {
  total: number;
  lid: number;
  mover: number;
  opponent: number;
  numerator: number;
  denominator: number;
  decimal: string;
  decision: boolean;
}

export interface LevelTable {
  total: number;
  entries: TableEntry[];
}

export interface OptimalLevels {
  max_total: number;
  levels: { total: number; strategy: string }[];
}
