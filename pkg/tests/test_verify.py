"""Sweep harness: records, determinism, property suites, audit."""

import json

import pytest

from treemult.families import BROAD, STRICT
from treemult.tree import emit_graph6, spider_tree, star_tree
from treemult.verify import (
    AuditReport,
    LemmaChecks,
    SweepConfig,
    chebyshev_completeness_audit,
    engine_agreement_check,
    lemma_suite,
    summarize_records,
    sweep,
)


def small_config(tmp_path=None, workers=1, modes=(BROAD, STRICT), n_max=6, M_max=7):
    return SweepConfig(
        n_min=1,
        n_max=n_max,
        M_max=M_max,
        modes=modes,
        worker_count=workers,
        output_path=str(tmp_path / "records.jsonl") if tmp_path else None,
    )


class TestSweep:
    def test_zero_broad_violations_small(self):
        report = sweep(small_config())
        assert report.bound_violations == 0
        assert report.eq_top_violations == 0
        assert report.eq_second[BROAD.value] == 0

    def test_strict_discrepancies_found(self):
        report = sweep(small_config(n_max=8, M_max=8))
        keys = {(d["tree"], tuple(d["lambda"])) for d in report.strict_discrepancies}
        assert (emit_graph6(star_tree(3)), (1, 6)) in keys
        assert (emit_graph6(spider_tree(3, 3, 1)), (1, 3)) in keys
        for d in report.strict_discrepancies:
            assert d["m"] == d["p"] - 2
            assert d["classification"]["broad"].startswith("GAMMA2")
            assert d["classification"]["strict"] == "NONE"

    def test_not_applicable_when_no_eigenvalue(self, tmp_path):
        config = small_config(tmp_path, n_max=4, M_max=2)
        sweep(config)
        records = [
            json.loads(line)
            for line in open(config.output_path, encoding="utf-8")
        ]
        # P_4 at lambda = 0: perfect matching, m = 0
        p4 = emit_graph6(spider_tree(3))  # a path is a one-legged spider
        hits = [r for r in records if r["tree"] == p4 and r["lambda"] == [1, 2]]
        assert len(hits) == 1
        assert hits[0]["m"] == 0
        assert hits[0]["thm14_status"] == {
            "broad": "NOT_APPLICABLE",
            "strict": "NOT_APPLICABLE",
        }

    def test_record_fields(self, tmp_path):
        config = small_config(tmp_path, n_max=5, M_max=4)
        report = sweep(config)
        lines = open(config.output_path, encoding="utf-8").read().splitlines()
        assert len(lines) == report.record_count
        for line in lines:
            rec = json.loads(line)
            assert set(rec) == {
                "tree",
                "lambda",
                "p",
                "gamma",
                "m",
                "bound_ok",
                "thm13_status",
                "thm14_status",
                "classification",
                "notes",
            }
            assert rec["bound_ok"] is True
            i, M = rec["lambda"]
            assert 1 <= i < M <= 4

    def test_byte_identical_across_worker_counts(self, tmp_path):
        cfg1 = SweepConfig(
            n_min=1, n_max=7, M_max=6, modes=(BROAD, STRICT),
            worker_count=1, output_path=str(tmp_path / "w1.jsonl"),
        )
        cfg2 = SweepConfig(
            n_min=1, n_max=7, M_max=6, modes=(BROAD, STRICT),
            worker_count=2, output_path=str(tmp_path / "w2.jsonl"),
        )
        sweep(cfg1)
        sweep(cfg2)
        b1 = open(cfg1.output_path, "rb").read()
        b2 = open(cfg2.output_path, "rb").read()
        assert b1 == b2 and len(b1) > 0

    def test_rerun_truncates(self, tmp_path):
        config = small_config(tmp_path, n_max=4, M_max=3)
        sweep(config)
        first = open(config.output_path, "rb").read()
        sweep(config)
        assert open(config.output_path, "rb").read() == first

    def test_summary_file(self, tmp_path):
        config = small_config(tmp_path, n_max=5, M_max=4)
        report = sweep(config)
        summary = json.load(open(report.summary_path, encoding="utf-8"))
        assert summary["records"] == report.record_count
        assert summary["bound"]["violations"] == 0
        assert summary["pendant_minus_two"]["broad"] == {"violations": 0}
        assert "discrepancies" in summary["pendant_minus_two"]["strict"]

    def test_summarize_records_roundtrip(self, tmp_path):
        config = small_config(tmp_path, n_max=6, M_max=5)
        report = sweep(config)
        summary = summarize_records(config.output_path)
        assert summary["records"] == report.record_count
        assert summary["pendant_minus_one"]["violations"] == 0
        assert summary["trees"] == report.tree_count

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SweepConfig(n_min=0)
        with pytest.raises(ValueError):
            SweepConfig(n_min=5, n_max=4)
        with pytest.raises(ValueError):
            SweepConfig(M_max=1)
        with pytest.raises(ValueError):
            SweepConfig(modes=())
        with pytest.raises(ValueError):
            SweepConfig(n_max=25)

    def test_engine_mismatch_aborts(self, monkeypatch):
        import treemult.verify as verify_mod
        from treemult.verify import EngineMismatchError

        monkeypatch.setattr(verify_mod, "rank_nullity", lambda t, mu: 99)
        with pytest.raises(EngineMismatchError):
            sweep(small_config(n_max=4, M_max=3))


class TestLemmaSuite:
    def test_all_checks_clean_small(self):
        config = SweepConfig(
            n_max=7,
            M_max=8,
            path_n_max=60,
            path_M_max=12,
            family_k_max=2,
            family_n_max=10,
            family_M_max=4,
        )
        report = lemma_suite(config)
        assert set(report.results) == {
            "path_simplicity",
            "parter_vertex",
            "branch_equivalence",
            "family_pendant_deletion",
        }
        for name, outcome in report.results.items():
            assert outcome["violations"] == [], name
            assert outcome["checked"] > 0, name

    def test_toggles(self):
        config = SweepConfig(
            n_max=4,
            M_max=3,
            lemma_checks=LemmaChecks(
                parter=False, branch=False, pendant_deletion=False,
            ),
            path_n_max=20,
            path_M_max=5,
        )
        report = lemma_suite(config)
        assert set(report.results) == {"path_simplicity"}


class TestAudit:
    def test_small_range_flags_empty(self):
        report = chebyshev_completeness_audit(8)
        assert isinstance(report, AuditReport)
        assert report.flags == []
        assert report.trees_checked == 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23

    def test_scope_notes_mean_absolutely_non_path_type(self):
        report = chebyshev_completeness_audit(8)
        noted = {n["tree"] for n in report.scope_notes}
        # the legs-(3,3,1) spider has 2 as a simple eigenvalue, and |2cos| < 2
        # strictly, so that one can never be of path form
        assert emit_graph6(spider_tree(3, 3, 1)) in noted
        # the legs-(1,2,4) spider looks non-path-type up to denominator n+1,
        # but its whole spectrum is 2cos(i*pi/30), so it must not be noted
        assert emit_graph6(spider_tree(1, 2, 4)) not in noted
        for note in report.scope_notes:
            assert note["p"] == 3 and note["level"] == 1

    def test_paths_never_noted(self):
        report = chebyshev_completeness_audit(7)
        from treemult.tree import parse_graph6, is_path

        for entry in report.scope_notes + report.flags:
            assert not is_path(parse_graph6(entry["tree"]))


class TestEngineAgreement:
    def test_random_pairs_single_worker(self):
        assert engine_agreement_check(100, n_max=12, M_max=13, seed=7) == []

    def test_random_pairs_parallel(self):
        assert engine_agreement_check(200, n_max=14, M_max=15, seed=11, workers=2) == []
