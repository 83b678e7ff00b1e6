"""Read-only JSON advisor service.

Serves per-state advice and whole-level tables from tables computed once
at startup (or loaded from a CLI export via --preload); request handling
never solves anything. Handlers share one immutable table, so concurrent
reads need no locking.

Endpoints:
    GET /health                                liveness, plain "ok"
    GET /api/v1/advice?lid=&mover=&opponent=   action + both branch values
    GET /api/v1/table/{total}                  one level, decision flags
    GET /api/v1/optimal/{total}                strategy strings, levels 4..total
"""

from __future__ import annotations

import json
from fractions import Fraction
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .optimize import optimal_full_with_table
from .render import level_entries, load_bundle
from .solver import ValueTable, to_decimal
from .states import GameState, is_decision_state, max_total_cap
from .strategy import FullStrategy, format_strategy

DEFAULT_PORT = 8650


def _prob_payload(v: Fraction) -> dict:
    return {
        "decimal": to_decimal(v, 3),
        "numerator": v.numerator,
        "denominator": v.denominator,
    }


class Advisor:
    """Precomputed optimal tables plus the advice lookup."""

    def __init__(self, full: FullStrategy, table: ValueTable):
        self.full = full
        self.table = table
        self.max_total = table.max_total

    @classmethod
    def precompute(cls, max_total: int | None = None) -> "Advisor":
        cap = max_total_cap() if max_total is None else max_total
        full, table = optimal_full_with_table(cap, method="policy")
        return cls(full, table)

    @classmethod
    def from_bundle(cls, obj: dict) -> "Advisor":
        full, table = load_bundle(obj)
        return cls(full, table)

    def advice(self, state: GameState) -> dict:
        """Action plus both branch values at `state`, all exact.

        p_continue is the state's own optimal value (keep rolling);
        p_stop is exactly 1 minus the mirrored state's optimal value.
        """
        p_continue = self.table.value(state)
        p_stop = 1 - self.table.value(state.mirror())
        total = state.total()
        decision = total >= 4 and is_decision_state(state)
        tie = False
        if not decision:
            action = "forced-continue"
            p_win = p_continue
        elif p_continue > p_stop:
            action = "continue"
            p_win = p_continue
        elif p_stop > p_continue:
            action = "stop"
            p_win = p_stop
        else:
            action = "continue"
            p_win = p_continue
            tie = True
        return {
            "state": {
                "lid": state.lid,
                "mover": state.mover,
                "opponent": state.opponent,
            },
            "action": action,
            "tie": tie,
            "p_continue": _prob_payload(p_continue),
            "p_stop": _prob_payload(p_stop),
            "p_win": _prob_payload(p_win),
        }

    def level_payload(self, total: int) -> dict:
        return {"total": total, "entries": level_entries(self.table, total)}

    def optimal_payload(self, total: int) -> dict:
        return {
            "max_total": total,
            "levels": [
                {"total": t, "strategy": format_strategy(self.full.level(t))}
                for t in range(4, total + 1)
            ],
        }


class _Handler(BaseHTTPRequestHandler):
    advisor: Advisor
    cors_origin: str | None = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, code: int, payload, content_type="application/json") -> None:
        body = (
            payload.encode()
            if isinstance(payload, str)
            else json.dumps(payload, indent=2).encode()
        )
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        if self.cors_origin:
            self.send_header("Access-Control-Allow-Origin", self.cors_origin)
        self.end_headers()
        self.wfile.write(body)

    def _error(self, code: int, message: str) -> None:
        self._send(code, {"error": message})

    def do_GET(self) -> None:  # noqa: N802 - BaseHTTPRequestHandler API
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        advisor = self.advisor

        if url.path == "/health":
            self._send(200, "ok", content_type="text/plain")
            return

        if parts[:2] == ["api", "v1"] and len(parts) >= 3:
            if parts[2] == "advice" and len(parts) == 3:
                self._advice(parse_qs(url.query))
                return
            if parts[2] == "table" and len(parts) == 4:
                self._level(parts[3], advisor.level_payload, minimum=2)
                return
            if parts[2] == "optimal" and len(parts) == 4:
                self._level(parts[3], advisor.optimal_payload, minimum=4)
                return
        self._error(404, f"no route for {url.path}")

    def _advice(self, query: dict) -> None:
        try:
            lid = int(query["lid"][0])
            mover = int(query["mover"][0])
            opponent = int(query["opponent"][0])
        except (KeyError, ValueError, IndexError):
            self._error(400, "advice needs integer lid, mover and opponent")
            return
        try:
            state = GameState(lid, mover, opponent)
        except ValueError as exc:
            self._error(400, str(exc))
            return
        if state.total() > self.advisor.max_total:
            self._error(
                422,
                f"total {state.total()} above the precomputed cap "
                f"{self.advisor.max_total}",
            )
            return
        self._send(200, self.advisor.advice(state))

    def _level(self, raw: str, payload, minimum: int) -> None:
        try:
            total = int(raw)
        except ValueError:
            self._error(404, f"not a total: {raw!r}")
            return
        if not minimum <= total <= self.advisor.max_total:
            self._error(
                404,
                f"total {total} outside {minimum}..{self.advisor.max_total}",
            )
            return
        self._send(200, payload(total))


def make_server(
    advisor: Advisor,
    port: int = DEFAULT_PORT,
    host: str = "127.0.0.1",
    cors_origin: str | None = "*",
) -> ThreadingHTTPServer:
    handler = type(
        "BoundHandler", (_Handler,), {"advisor": advisor, "cors_origin": cors_origin}
    )
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(
    port: int = DEFAULT_PORT,
    max_total: int | None = None,
    preload: str | None = None,
    host: str = "127.0.0.1",
    cors_origin: str | None = "*",
) -> None:
    if preload:
        with open(preload, encoding="utf-8") as fh:
            advisor = Advisor.from_bundle(json.load(fh))
    else:
        advisor = Advisor.precompute(max_total)
    server = make_server(advisor, port=port, host=host, cors_origin=cors_origin)
    print(
        f"advisor ready on http://{host}:{server.server_address[1]} "
        f"(totals up to {advisor.max_total})",
        flush=True,
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
