import json
import subprocess
import sys
from pathlib import Path

from l2trees.cli import main

DATA = Path(__file__).resolve().parent.parent / "src" / "l2trees" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


HURWITZ = "< x, y | x^2, y^3, (x*y)^7 >"


class TestAnalyzePresentation:
    def test_hurwitz_classification(self, capsys):
        code, payload, _ = run_json(capsys, "analyze-presentation", HURWITZ)
        assert code == 0
        v = payload["verdict"]
        assert v["classification"] == "InfiniteNonAmenable"
        assert v["k"] == "-1/42"
        assert v["b1_lower_bound"] == "1/42"
        assert len(payload["corollaries"]) == 5

    def test_enumerate_confirms_icosahedral_bound(self, capsys):
        code, payload, _ = run_json(
            capsys,
            "analyze-presentation",
            "< x, y | x^2, y^3, (x*y)^5 >",
            "--enumerate",
        )
        assert code == 0
        oracle = payload["oracle"]
        assert oracle["status"] == "complete"
        assert oracle["order"] == 60
        assert all(r["status"] == "verified" for r in oracle["relators"])
        assert payload["verdict"]["order_lower_bound"] == "30"
        assert payload["verdict"]["hypotheses"][
            "relators-have-stated-orders"
        ] == "verified"
        assert "contradiction" not in payload

    def test_zero_exponent_is_input_error(self, capsys):
        code, out, err = run(capsys, "analyze-presentation", "< x | x^0 >")
        assert code == 2
        assert "zero exponent" in err
        assert out == ""

    def test_unreadable_file_is_input_error(self, capsys):
        code, _, err = run(capsys, "analyze-presentation", "no_such_file.txt")
        assert code == 2
        assert "cannot read" in err

    def test_file_input(self, capsys, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text(HURWITZ, encoding="utf-8")
        code, payload, _ = run_json(capsys, "analyze-presentation", str(f))
        assert code == 0
        assert payload["verdict"]["k"] == "-1/42"

    def test_violated_hypothesis_reported_inconclusive(self, capsys):
        code, payload, _ = run_json(
            capsys, "analyze-presentation", "< x | x^2, x^6 >", "--enumerate"
        )
        assert code == 0  # not a tool contradiction: the hypothesis fails
        assert payload["oracle"]["relators"][1]["status"] == "violated"
        assert payload["verdict"]["classification"] == "Inconclusive"

    def test_oracle_limit_inconclusive(self, capsys):
        code, payload, _ = run_json(
            capsys,
            "analyze-presentation",
            "< x, y | x^3, y^3, (x*y)^3 >",
            "--enumerate",
            "--limit",
            "200",
        )
        assert code == 0
        assert payload["oracle"]["status"] == "inconclusive"
        assert payload["verdict"]["classification"] == "Infinite"

    def test_human_output_carries_same_values(self, capsys):
        code, out, _ = run(capsys, "analyze-presentation", HURWITZ)
        assert code == 0
        assert "k = -1/42" in out
        assert "b1 lower bound: 1/42" in out
        assert "InfiniteNonAmenable" in out
        code, payload, _ = run_json(capsys, "analyze-presentation", HURWITZ)
        assert payload["verdict"]["k"] == "-1/42"
        assert payload["verdict"]["b1_lower_bound"] == "1/42"

    def test_no_floats_in_json_report(self, capsys):
        code, out, _ = run(
            capsys, "analyze-presentation", HURWITZ, "--json"
        )

        def reject_floats(node):
            assert not isinstance(node, float)
            if isinstance(node, dict):
                for v in node.values():
                    reject_floats(v)
            elif isinstance(node, list):
                for v in node:
                    reject_floats(v)

        reject_floats(json.loads(out))


class TestAnalyzeGog:
    def test_modular_group_file(self, capsys):
        code, payload, _ = run_json(
            capsys, "analyze-gog", str(DATA / "modular_group.json")
        )
        assert code == 0
        inv = payload["invariants"]
        assert inv["chi"] == "-1/6"
        assert inv["b1"] == "1/6"
        assert inv["stable_letter_rank"] == 0
        assert all(
            entry["status"] == "true" for entry in payload["class_C"].values()
        )

    def test_wedge_file(self, capsys):
        code, payload, _ = run_json(
            capsys, "analyze-gog", str(DATA / "free_group_3.json")
        )
        assert code == 0
        inv = payload["invariants"]
        assert inv["chi"] == "-2"
        assert inv["b1"] == "2"
        assert inv["stable_letter_rank"] == 3

    def test_modular_group_with_normal_generators(self, capsys):
        code, payload, _ = run_json(
            capsys,
            "analyze-gog",
            str(DATA / "modular_group.json"),
            "--normal-generators",
            "1",
        )
        assert code == 0
        v = payload["verdict"]
        assert v["k"] == "5/6"
        assert v["classification"] == "FiniteOrderBound"
        assert v["order_lower_bound"] == "6/5"
        assert any("IF G is finite THEN |G| >= 6/5" in n for n in v["notes"])

    def test_surface_vertex_file(self, capsys):
        code, payload, _ = run_json(
            capsys, "analyze-gog", str(DATA / "surface_genus_2.json")
        )
        assert code == 0
        assert payload["invariants"]["chi"] == "-2"
        assert payload["invariants"]["b1"] == "2"

    def test_invalid_json_is_input_error(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsys, "analyze-gog", str(f))
        assert code == 2

    def test_lagrange_violation_is_input_error(self, capsys, tmp_path):
        f = tmp_path / "bad_graph.json"
        f.write_text(
            json.dumps(
                {
                    "vertices": [
                        {"id": "a", "group": {"name": "C6", "order": 6}},
                        {"id": "b", "group": {"name": "C4", "order": 4}},
                    ],
                    "edges": [
                        {
                            "id": "e",
                            "ends": ["a", "b"],
                            "group": {"name": "C4", "order": 4},
                        }
                    ],
                }
            ),
            encoding="utf-8",
        )
        code, _, err = run(capsys, "analyze-gog", str(f))
        assert code == 2
        assert "lagrange" in err

    def test_edge_b1_hypothesis_reported_not_fatal(self, capsys, tmp_path):
        surface = {
            "name": "S2",
            "order": "inf",
            "b1": "2",
            "b2": "0",
            "chi": "-2",
            "two_dim_model": True,
        }
        f = tmp_path / "surface_edge.json"
        f.write_text(
            json.dumps(
                {
                    "vertices": [
                        {"id": "a", "group": surface},
                        {"id": "b", "group": surface},
                    ],
                    "edges": [{"id": "e", "ends": ["a", "b"], "group": surface}],
                }
            ),
            encoding="utf-8",
        )
        code, payload, _ = run_json(capsys, "analyze-gog", str(f))
        assert code == 0
        assert "b1_error" in payload["invariants"]
        assert payload["invariants"]["chi"] == "-2"

    def test_assume_class_c_upgrades_undetermined(self, capsys, tmp_path):
        # chi is specified, b1/b2 are not: class-C is undetermined
        vertex = {"name": "M", "order": "inf", "chi": "0"}
        f = tmp_path / "mystery.json"
        f.write_text(
            json.dumps({"vertices": [{"id": "a", "group": vertex}], "edges": []}),
            encoding="utf-8",
        )
        code, payload, _ = run_json(
            capsys, "analyze-gog", str(f), "--normal-generators", "2"
        )
        assert code == 0
        assert payload["class_C"]["vertex a"]["status"] == "undetermined"
        assert payload["verdict"]["hypotheses"][
            "stabilizers-in-class-C"
        ] == "undetermined"
        code, payload, _ = run_json(
            capsys,
            "analyze-gog",
            str(f),
            "--normal-generators",
            "2",
            "--assume-class-C",
        )
        assert payload["verdict"]["hypotheses"][
            "stabilizers-in-class-C"
        ] == "asserted"


class TestCensus:
    def test_builtin_census_rows_and_summary(self, capsys):
        code, payload, _ = run_json(capsys, "census", "--builtin")
        assert code == 0
        assert payload["total"] == 36
        assert payload["summary"] == {
            "FiniteOrderBound": 8,
            "Infinite": 3,
            "InfiniteNonAmenable": 25,
        }
        infinite_rows = [
            r["label"]
            for r in payload["rows"]
            if r["report"]["verdict"]["classification"] == "Infinite"
        ]
        assert infinite_rows == [
            "triangle(2,3,6)",
            "triangle(2,4,4)",
            "triangle(3,3,3)",
        ]

    def test_empty_directory(self, capsys, tmp_path):
        code, payload, _ = run_json(capsys, "census", str(tmp_path))
        assert code == 0
        assert payload["rows"] == []
        assert payload["total"] == 0

    def test_malformed_file_becomes_error_row(self, capsys, tmp_path):
        (tmp_path / "good.txt").write_text("< x | x^2 >", encoding="utf-8")
        (tmp_path / "bad.txt").write_text("< x | x^^2 >", encoding="utf-8")
        code, payload, _ = run_json(capsys, "census", str(tmp_path))
        assert code == 0
        assert payload["total"] == 2
        by_label = {r["label"]: r for r in payload["rows"]}
        assert "error" in by_label["bad.txt"]
        assert by_label["good.txt"]["report"]["verdict"]["k"] == "1/2"

    def test_census_rows_in_input_order(self, capsys, tmp_path):
        (tmp_path / "b.txt").write_text("< x | x^2 >", encoding="utf-8")
        (tmp_path / "a.txt").write_text("< x | x^3 >", encoding="utf-8")
        code, payload, _ = run_json(capsys, "census", str(tmp_path))
        assert [r["label"] for r in payload["rows"]] == ["a.txt", "b.txt"]

    def test_missing_directory_is_input_error(self, capsys):
        code, _, err = run(capsys, "census", "definitely_missing_dir")
        assert code == 2


class TestDeterminism:
    def test_json_reports_byte_identical(self, capsys):
        args = (
            "analyze-presentation",
            "< x, y | x^2, y^3, (x*y)^5 >",
            "--enumerate",
            "--json",
        )
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_census_byte_identical(self, capsys):
        _, first, _ = run(capsys, "census", "--builtin", "--json")
        _, second, _ = run(capsys, "census", "--builtin", "--json")
        assert first == second


class TestOutput:
    def test_out_flag_writes_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(
            capsys,
            "analyze-presentation",
            HURWITZ,
            "--json",
            "--out",
            str(target),
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["verdict"]["k"] == "-1/42"

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "l2trees.cli", "analyze-presentation", HURWITZ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "InfiniteNonAmenable" in proc.stdout
