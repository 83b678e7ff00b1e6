/** Live game tracker.
 *
 * The state is kept mover-relative, exactly like the solver's: lid count,
 * the current mover's hand, the opponent's hand, plus whose turn it is
 * from the human's point of view. Events are what the human observes at
 * the table; applying one performs the same transition the game rules
 * define, so replays of the solver's exported event fixtures must land on
 * identical states (that equivalence is tested).
 */

export type TrackerEvent =
  | "rolled-six"
  | "rolled-free"
  | "rolled-occupied"
  | "stopped";

export type Winner = "human" | "opponent" | null;

export interface TrackerState {
  lid: number;
  mover: number;
  opponent: number;
  /** true when the human is the mover */
  humanTurn: boolean;
  /** the mover just placed a stick and may choose to stop */
  pendingDecision: boolean;
  winner: Winner;
}

export const MAX_LID = 5;

/** A stop/continue choice exists on the lid unless it is empty or the
 * opponent holds a single stick with exactly one stick standing. */
export function isDecisionState(lid: number, opponent: number): boolean {
  return lid >= 1 && !(lid === 1 && opponent === 1);
}

export function startState(
  lid: number,
  mover: number,
  opponent: number,
  humanTurn = true,
): TrackerState {
  if (lid < 0 || lid > MAX_LID || mover < 1 || opponent < 1) {
    throw new Error(`not a valid situation: (${lid}/${mover}/${opponent})`);
  }
  return { lid, mover, opponent, humanTurn, pendingDecision: false, winner: null };
}

export function totalSticks(s: TrackerState): number {
  return s.lid + s.mover + s.opponent;
}

export function legalEvents(s: TrackerState): TrackerEvent[] {
  if (s.winner) return [];
  const events: TrackerEvent[] = ["rolled-six"];
  if (s.lid < MAX_LID) events.push("rolled-free");
  if (s.lid >= 1) events.push("rolled-occupied");
  if (s.pendingDecision && isDecisionState(s.lid, s.opponent)) {
    events.push("stopped");
  }
  return events;
}

/** Pure transition; throws on events impossible in the given state. */
export function applyEvent(s: TrackerState, event: TrackerEvent): TrackerState {
  if (s.winner) {
    throw new Error("the game is over");
  }
  switch (event) {
    case "rolled-six": {
      if (s.mover === 1) {
        return { ...s, pendingDecision: false, winner: s.humanTurn ? "human" : "opponent" };
      }
      const mover = s.mover - 1;
      return {
        ...s,
        mover,
        pendingDecision: isDecisionState(s.lid, s.opponent),
        winner: null,
      };
    }
    case "rolled-free": {
      if (s.lid >= MAX_LID) {
        throw new Error("no free hole with a full lid");
      }
      if (s.mover === 1) {
        return { ...s, pendingDecision: false, winner: s.humanTurn ? "human" : "opponent" };
      }
      const lid = s.lid + 1;
      return {
        ...s,
        lid,
        mover: s.mover - 1,
        pendingDecision: isDecisionState(lid, s.opponent),
        winner: null,
      };
    }
    case "rolled-occupied": {
      if (s.lid < 1) {
        throw new Error("nothing to hit on an empty lid");
      }
      return {
        lid: s.lid - 1,
        mover: s.opponent,
        opponent: s.mover + 1,
        humanTurn: !s.humanTurn,
        pendingDecision: false,
        winner: null,
      };
    }
    case "stopped": {
      if (!s.pendingDecision || !isDecisionState(s.lid, s.opponent)) {
        throw new Error("stopping is not available here");
      }
      return {
        lid: s.lid,
        mover: s.opponent,
        opponent: s.mover,
        humanTurn: !s.humanTurn,
        pendingDecision: false,
        winner: null,
      };
    }
  }
}

/** Tracker with an undo history; every apply pushes the prior state. */
export class Tracker {
  private history: TrackerState[] = [];
  state: TrackerState;

  constructor(initial: TrackerState) {
    this.state = initial;
  }

  apply(event: TrackerEvent): TrackerState {
    const next = applyEvent(this.state, event);
    this.history.push(this.state);
    this.state = next;
    return next;
  }

  canUndo(): boolean {
    return this.history.length > 0;
  }

  undo(): boolean {
    const prior = this.history.pop();
    if (!prior) return false;
    this.state = prior;
    return true;
  }

  reset(state: TrackerState): void {
    this.history = [];
    this.state = state;
  }

  depth(): number {
    return this.history.length;
  }
}

/** Compact hash-fragment form so a page reload resumes the game. */
export function encodeState(s: TrackerState): string {
  const turn = s.humanTurn ? 1 : 0;
  const pending = s.pendingDecision ? 1 : 0;
  const winner = s.winner === "human" ? "h" : s.winner === "opponent" ? "o" : "-";
  return `${s.lid}.${s.mover}.${s.opponent}.${turn}.${pending}.${winner}`;
}

export function decodeState(text: string): TrackerState {
  const parts = text.split(".");
  if (parts.length !== 6) {
    throw new Error(`not a tracker state: ${text}`);
  }
  const [lid, mover, opponent] = parts.slice(0, 3).map(Number);
  if (
    lid === undefined || mover === undefined || opponent === undefined ||
    !Number.isInteger(lid) || !Number.isInteger(mover) || !Number.isInteger(opponent)
  ) {
    throw new Error(`not a tracker state: ${text}`);
  }
  const state = startState(lid, mover, opponent, parts[3] === "1");
  return {
    ...state,
    pendingDecision: parts[4] === "1",
    winner: parts[5] === "h" ? "human" : parts[5] === "o" ? "opponent" : null,
  };
}
