"""Advisor service: advice payloads, level tables, HTTP behavior."""

import json
import threading
import urllib.error
import urllib.request
from fractions import Fraction

import pytest

from supersix.render import strategy_bundle, table_json
from supersix.service import Advisor, make_server
from supersix.states import GameState


@pytest.fixture(scope="module")
def advisor(policy_run):
    full, table = policy_run
    return Advisor(full, table)


@pytest.fixture(scope="module")
def server(advisor):
    srv = make_server(advisor, port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def get(base, path):
    with urllib.request.urlopen(base + path) as response:
        return response.status, response.read().decode()


def get_error(base, path):
    try:
        urllib.request.urlopen(base + path)
    except urllib.error.HTTPError as exc:
        return exc.code
    raise AssertionError(f"{path} unexpectedly succeeded")


class TestAdvice:
    def test_four_one_one_continue(self, advisor):
        advice = advisor.advice(GameState(4, 1, 1))
        assert advice["action"] == "continue"
        assert advice["p_continue"]["decimal"] == "0.524"
        assert advice["p_stop"]["decimal"] == "0.476"
        assert advice["p_win"] == advice["p_continue"]

    def test_three_five_five_stop(self, advisor):
        advice = advisor.advice(GameState(3, 5, 5))
        assert advice["action"] == "stop"
        assert advice["p_win"] == advice["p_stop"]

    def test_forced_continue_at_empty_lid(self, advisor):
        advice = advisor.advice(GameState(0, 2, 2))
        assert advice["action"] == "forced-continue"
        num, den = advice["p_win"]["numerator"], advice["p_win"]["denominator"]
        assert Fraction(num, den) == Fraction(36, 41)

    def test_stop_value_is_one_minus_the_mirror(self, advisor, optimal_table):
        state = GameState(3, 2, 4)
        advice = advisor.advice(state)
        stop = Fraction(
            advice["p_stop"]["numerator"], advice["p_stop"]["denominator"]
        )
        assert stop == 1 - optimal_table.value(state.mirror())

    def test_p_win_is_the_better_branch_everywhere(self, advisor, optimal_table):
        for state, _ in optimal_table.rows():
            advice = advisor.advice(state)
            values = {
                key: Fraction(
                    advice[key]["numerator"], advice[key]["denominator"]
                )
                for key in ("p_continue", "p_stop", "p_win")
            }
            assert values["p_win"] == max(values["p_continue"], values["p_stop"])


class TestHttp:
    def test_health(self, server):
        assert get(server, "/health") == (200, "ok")

    def test_advice_route(self, server):
        code, body = get(server, "/api/v1/advice?lid=4&mover=1&opponent=1")
        payload = json.loads(body)
        assert code == 200
        assert payload["action"] == "continue"
        assert payload["p_continue"]["decimal"] == "0.524"
        assert payload["p_stop"]["decimal"] == "0.476"

    def test_advice_stop_at_three_five_five(self, server):
        _, body = get(server, "/api/v1/advice?lid=3&mover=5&opponent=5")
        assert json.loads(body)["action"] == "stop"

    def test_advice_errors(self, server):
        assert get_error(server, "/api/v1/advice?lid=9&mover=1&opponent=1") == 400
        assert get_error(server, "/api/v1/advice?lid=1&mover=x&opponent=1") == 400
        assert get_error(server, "/api/v1/advice?lid=1") == 400
        assert get_error(server, "/api/v1/advice?lid=5&mover=9&opponent=9") == 422

    def test_table_six(self, server):
        code, body = get(server, "/api/v1/table/6")
        payload = json.loads(body)
        assert code == 200
        assert len(payload["entries"]) == 15
        assert sum(e["decision"] for e in payload["entries"]) == 9

    def test_table_two(self, server):
        _, body = get(server, "/api/v1/table/2")
        entries = json.loads(body)["entries"]
        assert len(entries) == 1
        assert entries[0]["decimal"] == "1.000"

    def test_table_seven_five_one_one(self, server):
        _, body = get(server, "/api/v1/table/7")
        entry = next(
            e
            for e in json.loads(body)["entries"]
            if (e["lid"], e["mover"], e["opponent"]) == (5, 1, 1)
        )
        assert entry["decimal"] == "0.451"

    def test_table_above_cap_404(self, server):
        assert get_error(server, "/api/v1/table/16") == 404
        assert get_error(server, "/api/v1/table/1") == 404
        assert get_error(server, "/api/v1/table/x") == 404

    def test_optimal_ten(self, server):
        _, body = get(server, "/api/v1/optimal/10")
        levels = {
            entry["total"]: entry["strategy"]
            for entry in json.loads(body)["levels"]
        }
        assert levels[10] == "1111111/1111111/111111/00000/0000"
        assert levels[4] == "1/1"

    def test_optimal_above_cap_404(self, server):
        assert get_error(server, "/api/v1/optimal/16") == 404

    def test_unknown_route_404(self, server):
        assert get_error(server, "/api/v1/nope") == 404

    def test_cors_header(self, server):
        request = urllib.request.Request(server + "/health")
        with urllib.request.urlopen(request) as response:
            assert response.headers["Access-Control-Allow-Origin"] == "*"

    def test_table_matches_cli_json(self, server, optimal_table):
        # one shared renderer: the service body equals the CLI export
        _, body = get(server, "/api/v1/table/6")
        assert body == table_json(optimal_table, 6)


class TestBundleRoundTrip:
    def test_from_bundle_equals_precompute(self, advisor, policy_run):
        full, table = policy_run
        clone = Advisor.from_bundle(
            json.loads(json.dumps(strategy_bundle(full, table)))
        )
        state = GameState(3, 4, 6)
        assert clone.advice(state) == advisor.advice(state)
        assert clone.max_total == advisor.max_total
