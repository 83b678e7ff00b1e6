/** Acceptance against a live advisor service: spawns the real backend and
 * checks the two headline advice panels end to end. */

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { AdvisorClient } from "../src/api";
import { advicePanel } from "../src/advice";

let child: ChildProcess | null = null;
let client: AdvisorClient;

function startService(): Promise<string> {
  return new Promise((resolve, reject) => {
    child = spawn(
      "python3",
      ["-m", "supersix.cli", "serve", "--port", "0", "--max-total", "13"],
      { stdio: ["ignore", "pipe", "pipe"] },
    );
    let stderr = "";
    child.stderr?.on("data", (chunk: Buffer) => {
      stderr += chunk.toString();
    });
    child.on("exit", (code) =>
      reject(new Error(`service exited early (${code}): ${stderr}`)),
    );
    let banner = "";
    child.stdout?.on("data", (chunk: Buffer) => {
      banner += chunk.toString();
      const match = banner.match(/http:\/\/[\d.]+:(\d+)/);
      if (match) {
        child?.removeAllListeners("exit");
        resolve(`http://127.0.0.1:${match[1]}`);
      }
    });
    setTimeout(() => reject(new Error(`service never came up: ${stderr}`)), 60_000);
  });
}

beforeAll(async () => {
  const base = await startService();
  client = new AdvisorClient(base);
  expect(await client.health()).toBe(true);
}, 70_000);

afterAll(() => {
  child?.kill();
});

describe("advice panel against the live service", () => {
  it("(4/1/1): badge ROLL with 0.524 over 0.476", async () => {
    const advice = await client.advice(4, 1, 1);
    const panel = advicePanel(advice);
    expect(panel.badge).toBe("ROLL");
    expect(advice.p_continue.decimal).toBe("0.524");
    expect(advice.p_stop.decimal).toBe("0.476");
    expect(panel.continueLine).toContain("0.524");
    expect(panel.stopLine).toContain("0.476");
  });

  it("(3/5/5): badge STOP", async () => {
    const advice = await client.advice(3, 5, 5);
    expect(advicePanel(advice).badge).toBe("STOP");
  });

  it("(0/2/2): no choice, winning chance 0.878", async () => {
    const advice = await client.advice(0, 2, 2);
    const panel = advicePanel(advice);
    expect(panel.badge).toBe("NO CHOICE");
    expect(advice.p_win.decimal).toBe("0.878");
    expect(advice.p_win.numerator).toBe(36);
    expect(advice.p_win.denominator).toBe(41);
  });

  it("serves the level-7 table with 14 highlighted decisions", async () => {
    const table = await client.table(7);
    expect(table.entries.filter((e) => e.decision)).toHaveLength(14);
    const cell = table.entries.find(
      (e) => e.lid === 5 && e.mover === 1 && e.opponent === 1,
    );
    expect(cell?.decimal).toBe("0.451");
  });

  it("serves the published strategy strings", async () => {
    const optimal = await client.optimal(13);
    const byTotal = new Map(optimal.levels.map((l) => [l.total, l.strategy]));
    expect(byTotal.get(13)).toBe(
      "1111111111/1111111111/111000111/00000000/0000000",
    );
  });
});
