/** View-model for the what-if pyramid: a level table arranged the way the
 * probability pyramids are drawn, one row per lid count with the highest
 * lid on top and larger mover hands to the left. */

import { LevelTable, TableEntry } from "./types";

export interface PyramidCell {
  lid: number;
  mover: number;
  opponent: number;
  decimal: string;
  /** the mover has a real continue/stop choice here; highlight it */
  decision: boolean;
  /** unreachable in real play; shown dimmed in parentheses */
  unreachable: boolean;
}

export interface PyramidRow {
  lid: number;
  cells: PyramidCell[];
}

function toCell(entry: TableEntry): PyramidCell {
  return {
    lid: entry.lid,
    mover: entry.mover,
    opponent: entry.opponent,
    decimal: entry.decimal,
    decision: entry.decision,
    unreachable: entry.lid === 0 && entry.opponent === 1 && entry.mover >= 2,
  };
}

export function pyramidRows(table: LevelTable): PyramidRow[] {
  const byLid = new Map<number, PyramidCell[]>();
  for (const entry of table.entries) {
    const cells = byLid.get(entry.lid) ?? [];
    cells.push(toCell(entry));
    byLid.set(entry.lid, cells);
  }
  const rows: PyramidRow[] = [];
  const lids = [...byLid.keys()].sort((a, b) => b - a);
  for (const lid of lids) {
    const cells = byLid.get(lid)!;
    cells.sort((a, b) => b.mover - a.mover);
    rows.push({ lid, cells });
  }
  return rows;
}

export function decisionCellCount(table: LevelTable): number {
  return table.entries.filter((e) => e.decision).length;
}
