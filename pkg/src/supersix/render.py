"""Rendering value tables: text pyramids, CSV, and JSON.

The pyramid draws one level the way the reference figures do: one row per
lid count (highest on top), each cell showing mover/opponent hands and the
3-place value. States that real play cannot reach (an empty lid with the
opponent down to one stick) print in parentheses. CSV and JSON carry the
exact fractions; their row order is (total, lid, mover) ascending and is
byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable

from .optimize import GapRecord
from .solver import ValueTable, signed_decimal, to_decimal
from .states import GameState, enumerate_states, is_decision_state
from .strategy import FullStrategy

GAP_DECIMAL_PLACES = 8


def _unreachable(state: GameState) -> bool:
    # (0/k/1) with k >= 2 would need the opponent to have stopped on an
    # empty lid, which never happens
    return state.lid == 0 and state.opponent == 1 and state.mover >= 2


def pyramid_text(table: ValueTable, total: int, places: int = 3) -> str:
    """One level as a centered triangle, lid counts down the left edge."""
    rows = []
    states = enumerate_states(total)
    max_lid = max(s.lid for s in states)
    cells_by_lid: dict[int, list[str]] = {}
    for s in states:  # figures put the larger mover hand on the left
        text = f"{s.mover}/{s.opponent} {to_decimal(table.value(s), places)}"
        if _unreachable(s):
            text = f"({text})"
        cells_by_lid.setdefault(s.lid, []).insert(0, text)

    width = max(len(c) for cells in cells_by_lid.values() for c in cells) + 2
    max_cells = len(cells_by_lid[0])
    for lid in range(max_lid, -1, -1):
        cells = cells_by_lid[lid]
        pad = " " * ((max_cells - len(cells)) * width // 2)
        body = "".join(c.center(width) for c in cells)
        rows.append(f"lid {lid} |{pad}{body.rstrip()}")
    return "\n".join(rows)


def level_entries(table: ValueTable, total: int, places: int = 3) -> list[dict]:
    """JSON-ready rows for one level, ordered (lid, mover), with the
    decision flag the advisor UI highlights."""
    entries = []
    for s in enumerate_states(total):
        v = table.value(s)
        entries.append(
            {
                "total": total,
                "lid": s.lid,
                "mover": s.mover,
                "opponent": s.opponent,
                "numerator": v.numerator,
                "denominator": v.denominator,
                "decimal": to_decimal(v, places),
                "decision": total >= 4 and is_decision_state(s),
            }
        )
    return entries


def table_json(table: ValueTable, total: int) -> str:
    return json.dumps(
        {"total": total, "entries": level_entries(table, total)}, indent=2
    )


def table_csv(table: ValueTable, totals: Iterable[int], places: int = 3) -> str:
    """The spec'd CSV: total,lid,mover,opponent,numerator,denominator,decimal."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["total", "lid", "mover", "opponent", "numerator", "denominator", "decimal"]
    )
    for total in totals:
        for s in enumerate_states(total):
            v = table.value(s)
            writer.writerow(
                [
                    total,
                    s.lid,
                    s.mover,
                    s.opponent,
                    v.numerator,
                    v.denominator,
                    to_decimal(v, places),
                ]
            )
    return out.getvalue()


def parse_table_csv(text: str) -> dict[GameState, Fraction]:
    """Inverse of table_csv (the exact fractions round-trip)."""
    values = {}
    reader = csv.DictReader(io.StringIO(text))
    for row in reader:
        state = GameState(int(row["lid"]), int(row["mover"]), int(row["opponent"]))
        values[state] = Fraction(int(row["numerator"]), int(row["denominator"]))
    return values


def gap_csv(records: Iterable[GapRecord]) -> str:
    """total,k,l,gap_numerator,gap_denominator,gap_decimal per lid-3 point."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["total", "k", "l", "gap_numerator", "gap_denominator", "gap_decimal"]
    )
    for rec in records:
        writer.writerow(
            [
                rec.state.total(),
                rec.state.mover,
                rec.state.opponent,
                rec.gap.numerator,
                rec.gap.denominator,
                signed_decimal(rec.gap, GAP_DECIMAL_PLACES),
            ]
        )
    return out.getvalue()


def strategy_bundle(full: FullStrategy, table: ValueTable) -> dict:
    """Everything the advisor service needs, as one JSON-able object."""
    from .strategy import format_strategy

    return {
        "max_total": table.max_total,
        "levels": {
            str(t): format_strategy(full.level(t))
            for t in range(4, full.max_total + 1)
        },
        "values": [
            {
                "lid": s.lid,
                "mover": s.mover,
                "opponent": s.opponent,
                "numerator": v.numerator,
                "denominator": v.denominator,
            }
            for s, v in table.rows()
        ],
    }


def load_bundle(obj: dict) -> tuple[FullStrategy, ValueTable]:
    from .strategy import parse_strategy

    max_total = int(obj["max_total"])
    levels = {
        int(t): parse_strategy(text, int(t)) for t, text in obj["levels"].items()
    }
    full = (
        FullStrategy(max(levels), levels) if levels else FullStrategy(3, {})
    )
    values = {
        GameState(r["lid"], r["mover"], r["opponent"]): Fraction(
            r["numerator"], r["denominator"]
        )
        for r in obj["values"]
    }
    return full, ValueTable(full, values, max_total)
