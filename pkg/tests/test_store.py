"""Corpus store: ingestion, labeling, supersession, distribution, durability."""
import json
from datetime import datetime, timedelta, timezone

import pytest

from nonissue.store import (
    CorpusStore,
    IngestError,
    IssueReport,
    LabelInvariantError,
    LabelRecord,
    PickStrategy,
    UnknownReportError,
    Verdict,
    parse_reports,
    read_labeled_corpus,
    write_labeled_corpus,
)

T0 = datetime(2020, 10, 1, 9, 0, 0, tzinfo=timezone.utc)


def _report(rid, project="Cards", minute=0, summary="Ekran açılamadı."):
    return IssueReport(
        id=rid, project=project, summary=summary, description="", created_at=T0 + timedelta(minutes=minute)
    )


def _label(rid, verdict=Verdict.ISSUE, code=None, minute=0, labeler="ayşe"):
    return LabelRecord(
        report_id=rid, verdict=verdict, pattern_code=code, labeler=labeler,
        labeled_at=T0 + timedelta(minutes=minute),
    )


def _reports_file(rows):
    lines = [json.dumps({"format": "nonissue-reports", "version": 1})]
    lines += [json.dumps(r) for r in rows]
    return "\n".join(lines) + "\n"


class TestParseReports:
    def test_well_formed(self):
        text = _reports_file(
            [
                {"id": "R1", "project": "A", "summary": "s", "description": "d", "created_at": "2020-10-01T09:00:00+00:00"},
                {"id": "R2", "project": "A", "summary": "s", "description": "", "created_at": "2020-10-01T09:01:00+00:00"},
                {"id": "R3", "project": "B", "summary": "s", "description": "", "created_at": "2020-10-01T09:02:00+00:00"},
            ]
        )
        reports = parse_reports(text)
        assert [r.id for r in reports] == ["R1", "R2", "R3"]

    def test_duplicate_id_cites_line(self):
        text = _reports_file(
            [
                {"id": "R1", "project": "A", "summary": "s", "description": "", "created_at": "2020-10-01T09:00:00+00:00"},
                {"id": "R1", "project": "A", "summary": "s", "description": "", "created_at": "2020-10-01T09:01:00+00:00"},
            ]
        )
        with pytest.raises(IngestError, match="line 3"):
            parse_reports(text)

    def test_malformed_line_cites_line(self):
        text = _reports_file([]) + "{broken\n"
        with pytest.raises(IngestError, match="line 2"):
            parse_reports(text)

    def test_empty_file(self):
        assert parse_reports("") == []

    def test_bad_header(self):
        with pytest.raises(IngestError, match="line 1"):
            parse_reports('{"format": "something-else"}\n')


class TestLabels:
    def test_nonissue_requires_pattern(self):
        with pytest.raises(LabelInvariantError):
            _label("R1", Verdict.NON_ISSUE, code=None)

    def test_issue_forbids_pattern(self):
        with pytest.raises(LabelInvariantError):
            _label("R1", Verdict.ISSUE, code="NI_REQUEST")

    def test_unknown_report_rejected(self, tmp_path):
        store = CorpusStore(tmp_path)
        with pytest.raises(UnknownReportError):
            store.save_label(_label("missing", Verdict.ISSUE))

    def test_pattern_code_must_be_in_catalog(self, tmp_path):
        store = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        store.add_reports([_report("R1")])
        with pytest.raises(LabelInvariantError, match="catalog"):
            store.save_label(_label("R1", Verdict.NON_ISSUE, code="NI_UNKNOWN"))
        store.save_label(_label("R1", Verdict.NON_ISSUE, code="NI_REQUEST"))

    def test_relabel_latest_wins(self, tmp_path):
        store = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        store.add_reports([_report("R1")])
        store.save_label(_label("R1", Verdict.ISSUE, minute=1))
        store.save_label(_label("R1", Verdict.NON_ISSUE, code="NI_REQUEST", minute=2))
        assert store.active_label("R1").verdict is Verdict.NON_ISSUE

    def test_timestamp_tie_broken_by_insertion(self, tmp_path):
        store = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        store.add_reports([_report("R1")])
        store.save_label(_label("R1", Verdict.NON_ISSUE, code="NI_REQUEST", minute=5, labeler="first"))
        store.save_label(_label("R1", Verdict.ISSUE, minute=5, labeler="second"))
        active = store.active_label("R1")
        assert active.labeler == "second"


class TestNextUnlabeled:
    def test_round_robin_cycles_projects(self, tmp_path):
        store = CorpusStore(tmp_path)
        store.add_reports([_report("A1", "Alpha", 0), _report("B1", "Beta", 1)])
        first = store.next_unlabeled(PickStrategy.ROUND_ROBIN_BY_PROJECT)
        second = store.next_unlabeled(PickStrategy.ROUND_ROBIN_BY_PROJECT)
        assert (first.project, second.project) == ("Alpha", "Beta")

    def test_round_robin_skips_exhausted_projects(self, tmp_path):
        store = CorpusStore(tmp_path)
        store.add_reports([_report("A1", "Alpha", 0), _report("B1", "Beta", 1), _report("B2", "Beta", 2)])
        store.save_label(_label("A1"))
        picks = [store.next_unlabeled(PickStrategy.ROUND_ROBIN_BY_PROJECT).id for _ in range(2)]
        assert picks == ["B1", "B1"]  # unlabeled B1 stays the oldest of Beta

    def test_all_labeled_gives_none(self, tmp_path):
        store = CorpusStore(tmp_path)
        store.add_reports([_report("A1")])
        store.save_label(_label("A1"))
        assert store.next_unlabeled(PickStrategy.FIFO) is None
        assert store.next_unlabeled(PickStrategy.ROUND_ROBIN_BY_PROJECT) is None

    def test_fifo_tie_broken_by_id(self, tmp_path):
        store = CorpusStore(tmp_path)
        store.add_reports([_report("R2", minute=0), _report("R1", minute=0)])
        assert store.next_unlabeled(PickStrategy.FIFO).id == "R1"

    def test_strategy_parsing(self):
        assert PickStrategy.parse("fifo") is PickStrategy.FIFO
        assert PickStrategy.parse("RoundRobinByProject") is PickStrategy.ROUND_ROBIN_BY_PROJECT
        assert PickStrategy.parse("round_robin") is PickStrategy.ROUND_ROBIN_BY_PROJECT


class TestDistribution:
    def test_project_percentage(self, tmp_path):
        store = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        reports = [_report(f"R{i}", "Bancassurance", i) for i in range(114)]
        store.add_reports(reports)
        for i, report in enumerate(reports):
            if i < 18:
                store.save_label(_label(report.id, Verdict.NON_ISSUE, "NI_REQUEST", minute=i))
            else:
                store.save_label(_label(report.id, minute=i))
        rows, totals = store.distribution()
        assert rows[0].non_issue_count == 18
        assert rows[0].total == 114
        assert round(rows[0].non_issue_pct, 2) == 15.79

    def test_totals_aggregate(self, tmp_path):
        store = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        reports = [_report(f"A{i}", "Alpha", i) for i in range(6)] + [
            _report(f"B{i}", "Beta", 10 + i) for i in range(4)
        ]
        store.add_reports(reports)
        for i, report in enumerate(reports):
            if i % 3 == 0:
                store.save_label(_label(report.id, Verdict.NON_ISSUE, "NI_REQUEST", minute=i))
            else:
                store.save_label(_label(report.id, minute=i))
        rows, totals = store.distribution()
        assert totals.non_issue_count == sum(r.non_issue_count for r in rows)
        assert totals.issue_count == sum(r.issue_count for r in rows)
        assert totals.total == 10

    def test_overall_prevalence_shape(self, tmp_path):
        store = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        reports = [_report(f"R{i:04}", "P", i) for i in range(1200)]
        store.add_reports(reports)
        for i, report in enumerate(reports):
            if i < 159:
                store.save_label(_label(report.id, Verdict.NON_ISSUE, "NI_REQUEST", minute=i))
            else:
                store.save_label(_label(report.id, minute=i))
        _, totals = store.distribution()
        assert round(totals.non_issue_pct, 2) == 13.25

    def test_empty_store(self, tmp_path):
        rows, totals = CorpusStore(tmp_path).distribution()
        assert rows == []
        assert totals.total == 0 and totals.non_issue_pct == 0.0


class TestDurability:
    def test_close_reopen_round_trip(self, tmp_path):
        store = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        store.add_reports([_report("R1", "Alpha"), _report("R2", "Beta", 1)])
        store.save_label(_label("R1", Verdict.NON_ISSUE, "NI_REQUEST", minute=3))
        store.save_label(_label("R1", Verdict.ISSUE, minute=4))
        del store
        reopened = CorpusStore(tmp_path, catalog_codes={"NI_REQUEST"})
        assert [r.id for r in reopened.reports()] == ["R1", "R2"]
        assert reopened.active_label("R1").verdict is Verdict.ISSUE
        assert reopened.active_label("R2") is None
        assert reopened.progress() == (1, 2)

    def test_duplicate_across_sessions_rejected(self, tmp_path):
        store = CorpusStore(tmp_path)
        store.add_reports([_report("R1")])
        reopened = CorpusStore(tmp_path)
        with pytest.raises(IngestError):
            reopened.add_reports([_report("R1")])


class TestLabeledCorpusFile:
    def test_round_trip(self, tmp_path):
        pairs = [
            (_report("R1", "Alpha"), _label("R1", Verdict.NON_ISSUE, "NI_REQUEST")),
            (_report("R2", "Beta", 1), _label("R2")),
        ]
        path = tmp_path / "corpus.jsonl"
        write_labeled_corpus(path, pairs)
        assert read_labeled_corpus(path) == pairs

    def test_mismatched_label_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        header = json.dumps({"format": "nonissue-labeled-corpus", "version": 1})
        row = json.dumps(
            {
                "report": _report("R1").to_json(),
                "label": _label("R9").to_json(),
            }
        )
        path.write_text(header + "\n" + row + "\n")
        with pytest.raises(IngestError, match="line 2"):
            read_labeled_corpus(path)
