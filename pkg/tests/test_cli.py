"""CLI subcommands: output fixtures, round-trips, determinism, exit codes."""

import json

import pytest

from supersix.cli import main
from supersix.render import parse_table_csv
from supersix.states import GameState
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSolve:
    def test_pyramid_total_five_shows_0882(self, capsys):
        code, out, _ = run(capsys, "solve", "--total", "5")
        assert code == 0
        assert "1/3 0.882" in out
        assert "(4/1 0.453)" in out  # unreachable cell stays parenthesized

    def test_pyramid_total_six_shows_0524(self, capsys):
        code, out, _ = run(capsys, "solve", "--total", "6")
        assert code == 0
        assert "1/1 0.524" in out

    def test_total_two_single_cell(self, capsys):
        code, out, _ = run(capsys, "solve", "--total", "2")
        assert code == 0
        assert "1/1 1.000" in out
        assert out.count("lid") == 1

    def test_csv_round_trips_exact_fractions(self, capsys):
        code, out, _ = run(capsys, "solve", "--total", "4", "--format", "csv")
        assert code == 0
        values = parse_table_csv(out)
        assert values[GameState(0, 2, 2)] == Fraction(36, 41)
        assert values[GameState(2, 1, 1)] == Fraction(88, 123)
        assert len(values) == 6

    def test_json_round_trips(self, capsys):
        code, out, _ = run(capsys, "solve", "--total", "4", "--format", "json")
        payload = json.loads(out)
        assert payload["total"] == 4
        entry = next(
            e
            for e in payload["entries"]
            if (e["lid"], e["mover"], e["opponent"]) == (0, 2, 2)
        )
        assert Fraction(entry["numerator"], entry["denominator"]) == Fraction(36, 41)
        assert entry["decimal"] == "0.878"
        assert entry["decision"] is False

    def test_custom_level_strategy(self, capsys):
        code, out, _ = run(
            capsys,
            "solve",
            "--total",
            "7",
            "--strategy",
            "7=0101/1010/110/10/1",
            "--format",
            "json",
        )
        assert code == 0
        payload = json.loads(out)
        entry = next(
            e
            for e in payload["entries"]
            if (e["lid"], e["mover"], e["opponent"]) == (2, 4, 1)
        )
        assert abs(float(Fraction(entry["numerator"], entry["denominator"])) - 0.1715) < 5e-4

    def test_byte_identical_reruns(self, capsys):
        _, out1, _ = run(capsys, "solve", "--total", "6", "--format", "csv")
        _, out2, _ = run(capsys, "solve", "--total", "6", "--format", "csv")
        assert out1 == out2


class TestOptimal:
    def test_level_nine_line(self, capsys):
        code, out, _ = run(capsys, "optimal", "--max-total", "9", "--method", "policy")
        assert code == 0
        assert out.splitlines()[-1] == "111111/111111/11111/0000/000"

    def test_level_seven_staged(self, capsys):
        code, out, _ = run(capsys, "optimal", "--max-total", "7", "--method", "staged")
        assert code == 0
        assert out.splitlines() == [
            "1/1",
            "11/11/1",
            "111/111/11/1",
            "1111/1111/111/00/0",
        ]

    def test_max_total_four(self, capsys):
        code, out, _ = run(capsys, "optimal", "--max-total", "4", "--method", "policy")
        assert code == 0
        assert out.strip() == "1/1"


class TestGap:
    def test_thirteen_rows(self, capsys):
        code, out, _ = run(capsys, "gap", "--min-total", "13", "--max-total", "13")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "total,k,l,gap_numerator,gap_denominator,gap_decimal"
        rows = {tuple(line.split(",")[:3]): line.split(",") for line in lines[1:]}
        assert len(rows) == 9
        neg = {key for key, row in rows.items() if row[5].startswith("-")}
        assert neg == {("13", "4", "6"), ("13", "5", "5"), ("13", "6", "4")}

    def test_seven_all_positive(self, capsys):
        code, out, _ = run(capsys, "gap", "--min-total", "7", "--max-total", "7")
        assert code == 0
        for line in out.splitlines()[1:]:
            assert not line.split(",")[5].startswith("-")

    def test_fourteen_includes_three_eight(self, capsys):
        code, out, _ = run(capsys, "gap", "--min-total", "14", "--max-total", "14")
        rows = {tuple(l.split(",")[:3]): l.split(",") for l in out.splitlines()[1:]}
        assert rows[("14", "3", "8")][5].startswith("-")


class TestSimulate:
    def test_json_fields_and_estimate(self, capsys):
        code, out, _ = run(
            capsys,
            "simulate",
            "--total",
            "4",
            "--games",
            "200000",
            "--seed",
            "7",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["games"] == 200000
        assert abs(payload["estimate"] - 36 / 41) < 4 * payload["stderr"]

    def test_total_two_estimate_one(self, capsys):
        code, out, _ = run(capsys, "simulate", "--total", "2", "--games", "10")
        assert json.loads(out)["estimate"] == 1.0

    def test_deterministic_output(self, capsys):
        args = ["simulate", "--total", "6", "--games", "5000", "--seed", "42"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_suboptimal_player_a_scores_lower(self, capsys):
        base = [
            "simulate", "--total", "6", "--games", "150000", "--seed", "5",
        ]
        _, out_opt, _ = run(capsys, *base)
        _, out_bad, _ = run(capsys, *base, "--strategy-a", "all-stop")
        assert json.loads(out_bad)["estimate"] < json.loads(out_opt)["estimate"]


class TestErrors:
    def test_usage_error_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve"])  # missing --total
        assert exc.value.code == 2

    def test_bad_strategy_exit_two(self, capsys):
        code, _, err = run(capsys, "solve", "--total", "5", "--strategy", "xx")
        assert code == 2
        assert "error" in err

    def test_cap_exit_three(self, capsys):
        code, _, err = run(capsys, "optimal", "--max-total", "16")
        assert code == 3
        code, _, err = run(
            capsys, "--max-cap", "6", "optimal", "--max-total", "7"
        )
        assert code == 3

    def test_exhaustive_above_cap_exit_three(self, capsys):
        code, _, err = run(
            capsys, "optimal", "--max-total", "9", "--method", "exhaustive"
        )
        assert code == 3


class TestExport:
    def test_bundle_loads(self, capsys, tmp_path):
        out_path = tmp_path / "bundle.json"
        code, _, _ = run(
            capsys, "export", "--max-total", "6", "-o", str(out_path)
        )
        assert code == 0
        from supersix.render import load_bundle

        full, table = load_bundle(json.loads(out_path.read_text()))
        assert table.max_total == 6
        assert table.value(GameState(4, 1, 1)) is not None
        assert full.level(6).total == 6