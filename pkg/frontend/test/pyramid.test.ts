/** Pyramid view-model arrangement. */

import { describe, expect, it } from "vitest";

import { decisionCellCount, pyramidRows } from "../src/pyramid";
import { LevelTable, TableEntry } from "../src/types";

function entry(
  lid: number,
  mover: number,
  opponent: number,
  decimal: string,
  decision: boolean,
): TableEntry {
  return {
    total: lid + mover + opponent,
    lid,
    mover,
    opponent,
    numerator: 1,
    denominator: 2,
    decimal,
    decision,
  };
}

// total 4, as served: (lid, mover) ascending
const LEVEL4: LevelTable = {
  total: 4,
  entries: [
    entry(0, 1, 3, "1.000", false),
    entry(0, 2, 2, "0.878", false),
    entry(0, 3, 1, "0.657", false),
    entry(1, 1, 2, "0.853", true),
    entry(1, 2, 1, "0.616", false),
    entry(2, 1, 1, "0.715", true),
  ],
};

describe("pyramid arrangement", () => {
  it("puts the highest lid on top and larger mover hands to the left", () => {
    const rows = pyramidRows(LEVEL4);
    expect(rows.map((r) => r.lid)).toEqual([2, 1, 0]);
    expect(rows[2]!.cells.map((c) => c.mover)).toEqual([3, 2, 1]);
  });

  it("flags decision cells for highlighting", () => {
    const rows = pyramidRows(LEVEL4);
    const flagged = rows
      .flatMap((r) => r.cells)
      .filter((c) => c.decision)
      .map((c) => [c.lid, c.mover, c.opponent]);
    expect(flagged).toEqual([
      [2, 1, 1],
      [1, 1, 2],
    ]);
    expect(decisionCellCount(LEVEL4)).toBe(2);
  });

  it("marks the unreachable empty-lid cells", () => {
    const rows = pyramidRows(LEVEL4);
    const unreachable = rows
      .flatMap((r) => r.cells)
      .filter((c) => c.unreachable)
      .map((c) => [c.lid, c.mover, c.opponent]);
    expect(unreachable).toEqual([[0, 3, 1]]);
  });

  it("keeps every cell's stick count on the level total", () => {
    for (const row of pyramidRows(LEVEL4)) {
      for (const cell of row.cells) {
        expect(cell.lid + cell.mover + cell.opponent).toBe(4);
      }
    }
  });
});
