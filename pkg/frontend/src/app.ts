/** Browser wiring: tracker buttons, the advice panel, and the what-if
 * pyramid. All state lives client-side (and in the URL hash, so a reload
 * resumes the tracked game); all numbers come from the service. */

import { AdvisorClient, ApiError } from "./api";
import { advicePanel } from "./advice";
import { pyramidRows } from "./pyramid";
import {
  Tracker,
  TrackerEvent,
  decodeState,
  encodeState,
  legalEvents,
  startState,
  totalSticks,
} from "./tracker";

const EVENT_LABELS: Record<TrackerEvent, string> = {
  "rolled-six": "rolled a 6",
  "rolled-free": "stick placed",
  "rolled-occupied": "hit occupied",
  stopped: "stopped",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function serviceBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  return fromQuery ?? "http://127.0.0.1:8650";
}

class App {
  private readonly client = new AdvisorClient(serviceBaseUrl());
  private readonly tracker: Tracker;
  private adviceToken = 0;

  constructor() {
    let initial = startState(0, 3, 3, true);
    const hash = window.location.hash.slice(1);
    if (hash) {
      try {
        initial = decodeState(hash);
      } catch {
        // a stale or foreign hash; start fresh
      }
    }
    this.tracker = new Tracker(initial);
  }

  start(): void {
    for (const event of Object.keys(EVENT_LABELS) as TrackerEvent[]) {
      el<HTMLButtonElement>(`btn-${event}`).addEventListener("click", () => {
        this.tracker.apply(event);
        this.render();
      });
    }
    el<HTMLButtonElement>("btn-undo").addEventListener("click", () => {
      this.tracker.undo();
      this.render();
    });
    el<HTMLFormElement>("new-game").addEventListener("submit", (e) => {
      e.preventDefault();
      const sticks = Number(el<HTMLInputElement>("new-total").value);
      const half = Math.floor(sticks / 2);
      if (half >= 1 && sticks % 2 === 0) {
        this.tracker.reset(startState(0, half, half, true));
        this.render();
      }
    });
    el<HTMLSelectElement>("pyramid-total").addEventListener("change", () => {
      void this.renderPyramid();
    });
    this.render();
  }

  private render(): void {
    const s = this.tracker.state;
    window.location.hash = encodeState(s);

    el("state-line").textContent = s.winner
      ? s.winner === "human"
        ? "You win!"
        : "Opponent wins."
      : `lid ${s.lid} | you ${s.humanTurn ? s.mover : s.opponent} | ` +
        `opponent ${s.humanTurn ? s.opponent : s.mover} | ` +
        `${s.humanTurn ? "your roll" : "opponent rolls"} | ` +
        `${totalSticks(s)} sticks in play`;

    const legal = new Set(legalEvents(s));
    for (const event of Object.keys(EVENT_LABELS) as TrackerEvent[]) {
      el<HTMLButtonElement>(`btn-${event}`).disabled = !legal.has(event);
    }
    el<HTMLButtonElement>("btn-undo").disabled = !this.tracker.canUndo();

    void this.renderAdvice();
    void this.renderPyramid();
  }

  private async renderAdvice(): Promise<void> {
    const s = this.tracker.state;
    const badge = el("advice-badge");
    const body = el("advice-body");
    if (s.winner) {
      badge.textContent = "GAME OVER";
      badge.className = "badge over";
      body.textContent = "";
      return;
    }
    const token = ++this.adviceToken;
    try {
      const advice = await this.client.advice(s.lid, s.mover, s.opponent);
      if (token !== this.adviceToken) return; // a newer request finished
      const panel = advicePanel(advice);
      el("offline-banner").hidden = true;
      badge.textContent = panel.badge;
      badge.className = `badge ${panel.badge.toLowerCase().replace(" ", "-")}`;
      body.innerHTML = "";
      for (const line of [panel.continueLine, panel.stopLine, panel.winLine]) {
        const p = document.createElement("p");
        p.textContent = line;
        body.appendChild(p);
      }
      if (panel.note) {
        const p = document.createElement("p");
        p.className = "note";
        p.textContent = panel.note;
        body.appendChild(p);
      }
    } catch (error) {
      if (token !== this.adviceToken) return;
      if (error instanceof ApiError) {
        badge.textContent = "?";
        body.textContent = error.message;
      } else {
        el("offline-banner").hidden = false;
      }
    }
  }

  private async renderPyramid(): Promise<void> {
    const total = Number(el<HTMLSelectElement>("pyramid-total").value);
    const host = el("pyramid");
    try {
      const table = await this.client.table(total);
      host.innerHTML = "";
      for (const row of pyramidRows(table)) {
        const div = document.createElement("div");
        div.className = "pyramid-row";
        const label = document.createElement("span");
        label.className = "lid-label";
        label.textContent = `lid ${row.lid}`;
        div.appendChild(label);
        for (const cell of row.cells) {
          const button = document.createElement("button");
          button.className = "cell";
          if (cell.decision) button.classList.add("decision");
          if (cell.unreachable) button.classList.add("unreachable");
          button.textContent = `${cell.mover}/${cell.opponent} ${cell.decimal}`;
          button.title = `what if: lid ${cell.lid}, you ${cell.mover}, opponent ${cell.opponent}`;
          button.addEventListener("click", () => {
            this.tracker.reset(
              startState(cell.lid, cell.mover, cell.opponent, true),
            );
            this.render();
          });
          div.appendChild(button);
        }
        host.appendChild(div);
      }
    } catch (error) {
      host.textContent =
        error instanceof ApiError && error.status === 404
          ? "table unavailable"
          : "service unreachable";
    }
  }
}

if (typeof document !== "undefined") {
  new App().start();
}
