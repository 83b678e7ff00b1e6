/** View-model for the advice panel: turns a service payload into the
 * badge and numbers the panel shows. No math happens here; the service's
 * exact values are displayed as sent. */

import { Advice } from "./types";

export type Badge = "ROLL" | "STOP" | "NO CHOICE";

export interface AdvicePanel {
  badge: Badge;
  /** e.g. "keep rolling: 0.524" */
  continueLine: string;
  stopLine: string;
  winLine: string;
  note: string | null;
}

export function badgeFor(action: Advice["action"]): Badge {
  switch (action) {
    case "continue":
      return "ROLL";
    case "stop":
      return "STOP";
    case "forced-continue":
      return "NO CHOICE";
  }
}

export function advicePanel(advice: Advice): AdvicePanel {
  const badge = badgeFor(advice.action);
  let note: string | null = null;
  if (advice.action === "forced-continue") {
    note = "no choice here - keep rolling";
  } else if (advice.tie) {
    note = "both choices are exactly equal; rolling by convention";
  }
  return {
    badge,
    continueLine: `keep rolling: ${advice.p_continue.decimal}`,
    stopLine: `hand the die over: ${advice.p_stop.decimal}`,
    winLine: `winning chance: ${advice.p_win.decimal}`,
    note,
  };
}
