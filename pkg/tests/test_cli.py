"""Command-line interface: subcommands, formats, exit codes, stdin."""

import io
import json

import pytest

from treemult.cli import main
from treemult.tree import emit_graph6, enumerate_trees, path_tree, star_tree


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMult:
    def test_star_at_zero(self, capsys):
        code, out, _ = run(capsys, "mult", "--edges", "0-1,0-2,0-3", "--lambda", "1/2")
        assert code == 0
        assert out.strip() == "m=2 p=3 gamma=1"

    def test_path_graph6(self, capsys):
        g6 = emit_graph6(path_tree(5))
        code, out, _ = run(capsys, "mult", "--graph6", g6, "--lambda", "1/2")
        assert code == 0
        assert out.strip() == "m=1 p=2 gamma=0"

    def test_json_format_same_data(self, capsys):
        code, out, _ = run(
            capsys, "mult", "--edges", "0-1,0-2,0-3", "--lambda", "1/2",
            "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert (data["m"], data["p"], data["gamma"]) == (2, 3, 1)

    def test_stdin_lines(self, capsys, monkeypatch):
        lines = "\n".join(emit_graph6(t) for t in enumerate_trees(5)) + "\n"
        monkeypatch.setattr("sys.stdin", io.StringIO(lines))
        code, out, _ = run(capsys, "mult", "--lambda", "1/2")
        assert code == 0
        assert len(out.strip().splitlines()) == 3

    def test_json_tree_file(self, capsys, tmp_path):
        path = tmp_path / "tree.json"
        path.write_text(json.dumps(star_tree(4).to_json_dict()))
        code, out, _ = run(capsys, "mult", "--json", str(path), "--lambda", "1/2")
        assert code == 0
        assert out.strip() == "m=3 p=4 gamma=1"


class TestCharpoly:
    def test_coefficients(self, capsys):
        code, out, _ = run(capsys, "charpoly", "--edges", "0-1,0-2,0-3")
        assert code == 0
        assert out.split() == ["0", "0", "-3", "0", "1"]


class TestClassify:
    def test_mode_split_exemplar(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--edges", "0-1,0-2,0-3", "--lambda", "1/6",
            "--mode", "strict",
        )
        assert code == 0 and out.strip() == "NONE"
        code, out, _ = run(
            capsys, "classify", "--edges", "0-1,0-2,0-3", "--lambda", "1/6",
            "--mode", "broad",
        )
        assert code == 0 and out.splitlines()[0] == "GAMMA2(1)"

    def test_witness_in_json(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--edges", "0-1,0-2,0-3,0-4", "--lambda", "1/2",
            "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["result"] == "GAMMA(1)"
        assert data["witness"][0]["vertex"] == 0
        assert len(data["witness"][0]["components"]) == 4


class TestStreams:
    def test_enumerate_count(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "7")
        assert code == 0
        assert len(out.strip().splitlines()) == 11

    def test_enumerate_pipes_into_mult(self, capsys, monkeypatch):
        code, out, _ = run(capsys, "enumerate", "--n", "6")
        monkeypatch.setattr("sys.stdin", io.StringIO(out))
        code, out2, _ = run(capsys, "mult", "--lambda", "1/3")
        assert code == 0
        assert len(out2.strip().splitlines()) == 6

    def test_generate(self, capsys):
        code, out, _ = run(
            capsys, "generate", "--family", "gamma", "--k", "0",
            "--lambda", "1/2", "--n-max", "6",
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 3  # P_1, P_3, P_5

    def test_enumerate_respects_cap(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n", "21")
        assert code == 2 and "limit" in err
        code, out, _ = run(capsys, "enumerate", "--n", "5", "--limit", "5")
        assert code == 0 and len(out.strip().splitlines()) == 3

    def test_single_vertex_edge_text(self, capsys):
        code, out, _ = run(capsys, "mult", "--edges", "0", "--lambda", "1/2")
        assert code == 0
        assert out.strip() == "m=1 p=2 gamma=0"


class TestVerifyAuditReport:
    def test_verify_and_report(self, capsys, tmp_path):
        out_path = tmp_path / "rec.jsonl"
        code, out, _ = run(
            capsys, "verify", "--n-max", "5", "--m-max", "5",
            "--modes", "broad,strict", "--workers", "1",
            "--out", str(out_path), "--format", "json",
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["bound"]["violations"] == 0
        assert out_path.exists()
        code, out, _ = run(capsys, "report", str(out_path))
        assert code == 0
        assert "bound violations: 0" in out

    def test_verify_default_out_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("TREEMULT_OUT_DIR", str(tmp_path))
        code, _, _ = run(capsys, "verify", "--n-max", "4", "--m-max", "3", "--workers", "1")
        assert code == 0
        assert (tmp_path / "verify_records.jsonl").exists()

    def test_audit(self, capsys):
        code, out, _ = run(capsys, "audit", "--n-max", "6")
        assert code == 0
        assert "flags: 0" in out

    def test_report_exit_1_on_violations(self, capsys, tmp_path):
        # exit-code contract: broad-mode violations in the record file flip
        # the status to 1 (no real sweep produces one, so build the line)
        rec = {
            "tree": "B_",
            "lambda": [1, 2],
            "p": 2,
            "gamma": 0,
            "m": 0,
            "bound_ok": True,
            "thm13_status": "CONSISTENT",
            "thm14_status": {"broad": "VIOLATION"},
            "classification": {"broad": "NONE"},
            "notes": "synthetic",
        }
        path = tmp_path / "doctored.jsonl"
        path.write_text(json.dumps(rec) + "\n")
        code, out, _ = run(capsys, "report", str(path))
        assert code == 1

    def test_report_missing_file_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "report", str(tmp_path / "nope.jsonl"))
        assert code == 2 and "error" in err


class TestErrors:
    def test_bad_lambda_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["mult", "--edges", "0-1", "--lambda", "2/6"])
        assert exc.value.code == 2

    def test_cyclic_input_exits_2(self, capsys):
        code, _, err = run(capsys, "mult", "--edges", "0-1,1-2,2-0", "--lambda", "1/2")
        assert code == 2
        assert "error" in err

    def test_malformed_graph6_exits_2(self, capsys):
        code, _, err = run(capsys, "charpoly", "--graph6", "D")
        assert code == 2
        assert "error" in err

    def test_missing_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
