"""Report ingestion, label persistence and distribution reporting.

Persistence is an append-only JSONL log per file (reports, labels) with a
version header line; the in-memory index is rebuilt on open. Relabeling
appends a new record and the latest ``labeled_at`` wins (insertion order
breaks ties), so the log doubles as an audit trail.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

REPORTS_HEADER = {"format": "nonissue-reports", "version": 1}
LABELS_HEADER = {"format": "nonissue-labels", "version": 1}
CORPUS_HEADER = {"format": "nonissue-labeled-corpus", "version": 1}


class StoreError(Exception):
    pass


class IngestError(StoreError):
    """Malformed report/label file; message carries the line number."""


class UnknownReportError(StoreError):
    pass


class LabelInvariantError(StoreError):
    """Label record violates an invariant (e.g. non-issue without a pattern)."""


class Verdict(enum.Enum):
    ISSUE = "Issue"
    NON_ISSUE = "NonIssue"


class PickStrategy(enum.Enum):
    ROUND_ROBIN_BY_PROJECT = "RoundRobinByProject"
    FIFO = "Fifo"

    @classmethod
    def parse(cls, text: str) -> "PickStrategy":
        normalized = text.strip().lower().replace("_", "").replace("-", "")
        for strategy in cls:
            if strategy.value.lower() == normalized:
                return strategy
        if normalized in {"roundrobin", "roundrobinbyproject"}:
            return cls.ROUND_ROBIN_BY_PROJECT
        raise StoreError(f"unknown strategy {text!r}")


def _parse_time(value: str) -> datetime:
    ts = datetime.fromisoformat(value)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def _format_time(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).replace(microsecond=0).isoformat()


@dataclass(frozen=True)
class IssueReport:
    id: str
    project: str
    summary: str
    description: str
    created_at: datetime

    def __post_init__(self) -> None:
        if not self.id:
            raise StoreError("report id must be non-empty")
        if not self.summary:
            raise StoreError(f"report {self.id}: summary must be non-empty")

    @property
    def text(self) -> str:
        return f"{self.summary}\n{self.description}" if self.description else self.summary

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "project": self.project,
            "summary": self.summary,
            "description": self.description,
            "created_at": _format_time(self.created_at),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IssueReport":
        return cls(
            id=obj["id"],
            project=obj["project"],
            summary=obj["summary"],
            description=obj.get("description", ""),
            created_at=_parse_time(obj["created_at"]),
        )


@dataclass(frozen=True)
class LabelRecord:
    report_id: str
    verdict: Verdict
    pattern_code: str | None
    labeler: str
    labeled_at: datetime

    def __post_init__(self) -> None:
        if self.verdict is Verdict.NON_ISSUE and not self.pattern_code:
            raise LabelInvariantError(f"report {self.report_id}: non-issue labels require a pattern code")
        if self.verdict is Verdict.ISSUE and self.pattern_code:
            raise LabelInvariantError(f"report {self.report_id}: issue labels must not carry a pattern code")

    def to_json(self) -> dict:
        obj = {
            "report_id": self.report_id,
            "verdict": self.verdict.value,
            "labeler": self.labeler,
            "labeled_at": _format_time(self.labeled_at),
        }
        if self.pattern_code:
            obj["pattern_code"] = self.pattern_code
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "LabelRecord":
        return cls(
            report_id=obj["report_id"],
            verdict=Verdict(obj["verdict"]),
            pattern_code=obj.get("pattern_code"),
            labeler=obj.get("labeler", ""),
            labeled_at=_parse_time(obj["labeled_at"]),
        )


@dataclass(frozen=True)
class DistributionRow:
    project: str
    non_issue_count: int
    issue_count: int

    @property
    def total(self) -> int:
        return self.non_issue_count + self.issue_count

    @property
    def non_issue_pct(self) -> float:
        return 100.0 * self.non_issue_count / self.total if self.total else 0.0


def _read_jsonl(path: Path, expected_header: dict) -> list[dict]:
    objects: list[dict] = []
    lines = path.read_text(encoding="utf-8").splitlines()
    if not any(line.strip() for line in lines):
        return []
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        raise IngestError(f"{path.name} line 1: header is not valid JSON") from None
    if header.get("format") != expected_header["format"]:
        raise IngestError(f"{path.name} line 1: expected format {expected_header['format']!r}")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            raise IngestError(f"{path.name} line {lineno}: invalid JSON") from None
        obj["_line"] = lineno
        objects.append(obj)
    return objects


def parse_reports(text: str, source: str = "<reports>") -> list[IssueReport]:
    """Parse a report file; duplicate ids and malformed lines abort with the line number."""
    lines = text.splitlines()
    if not any(line.strip() for line in lines):
        return []
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        raise IngestError(f"{source} line 1: header is not valid JSON") from None
    if header.get("format") != REPORTS_HEADER["format"]:
        raise IngestError(f"{source} line 1: expected format {REPORTS_HEADER['format']!r}")
    reports: list[IssueReport] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            report = IssueReport.from_json(json.loads(line))
        except (json.JSONDecodeError, KeyError, ValueError, StoreError) as exc:
            raise IngestError(f"{source} line {lineno}: {exc}") from None
        if report.id in seen:
            raise IngestError(f"{source} line {lineno}: duplicate report id {report.id!r}")
        seen.add(report.id)
        reports.append(report)
    return reports


class CorpusStore:
    """Single-writer, multi-reader store over two append-only JSONL logs."""

    def __init__(self, root: str | Path, catalog_codes: Iterable[str] | None = None):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.reports_path = self.root / "reports.jsonl"
        self.labels_path = self.root / "labels.jsonl"
        self.catalog_codes = frozenset(catalog_codes) if catalog_codes is not None else None
        self._reports: dict[str, IssueReport] = {}
        self._labels: dict[str, tuple[datetime, int, LabelRecord]] = {}
        self._label_seq = 0
        self._rr_cursor = 0
        self._replay()

    def _replay(self) -> None:
        if self.reports_path.exists():
            for obj in _read_jsonl(self.reports_path, REPORTS_HEADER):
                lineno = obj.pop("_line")
                report = IssueReport.from_json(obj)
                if report.id in self._reports:
                    raise IngestError(f"{self.reports_path.name} line {lineno}: duplicate report id {report.id!r}")
                self._reports[report.id] = report
        else:
            self.reports_path.write_text(json.dumps(REPORTS_HEADER) + "\n", encoding="utf-8")
        if self.labels_path.exists():
            for obj in _read_jsonl(self.labels_path, LABELS_HEADER):
                obj.pop("_line")
                self._apply_label(LabelRecord.from_json(obj))
        else:
            self.labels_path.write_text(json.dumps(LABELS_HEADER) + "\n", encoding="utf-8")

    def _apply_label(self, record: LabelRecord) -> None:
        self._label_seq += 1
        current = self._labels.get(record.report_id)
        key = (record.labeled_at, self._label_seq)
        if current is None or key >= (current[0], current[1]):
            self._labels[record.report_id] = (record.labeled_at, self._label_seq, record)

    # -- reports ---------------------------------------------------------

    def add_reports(self, reports: Sequence[IssueReport]) -> int:
        for report in reports:
            if report.id in self._reports:
                raise IngestError(f"duplicate report id {report.id!r}")
        with self.reports_path.open("a", encoding="utf-8") as fh:
            for report in reports:
                fh.write(json.dumps(report.to_json(), ensure_ascii=False) + "\n")
        for report in reports:
            self._reports[report.id] = report
        return len(reports)

    def ingest(self, text: str, source: str = "<reports>") -> int:
        return self.add_reports(parse_reports(text, source))

    def get(self, report_id: str) -> IssueReport:
        report = self._reports.get(report_id)
        if report is None:
            raise UnknownReportError(f"unknown report id {report_id!r}")
        return report

    def reports(self) -> list[IssueReport]:
        return sorted(self._reports.values(), key=lambda r: (r.created_at, r.id))

    # -- labels ----------------------------------------------------------

    def save_label(self, record: LabelRecord) -> None:
        if record.report_id not in self._reports:
            raise UnknownReportError(f"unknown report id {record.report_id!r}")
        if (
            record.pattern_code
            and self.catalog_codes is not None
            and record.pattern_code not in self.catalog_codes
        ):
            raise LabelInvariantError(f"pattern code {record.pattern_code!r} is not in the active catalog")
        with self.labels_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_json(), ensure_ascii=False) + "\n")
        self._apply_label(record)

    def active_label(self, report_id: str) -> LabelRecord | None:
        entry = self._labels.get(report_id)
        return entry[2] if entry else None

    def active_labels(self) -> dict[str, LabelRecord]:
        return {rid: entry[2] for rid, entry in self._labels.items()}

    def labeled_pairs(self) -> list[tuple[IssueReport, LabelRecord]]:
        pairs = [
            (self._reports[rid], entry[2])
            for rid, entry in self._labels.items()
            if rid in self._reports
        ]
        pairs.sort(key=lambda p: (p[0].created_at, p[0].id))
        return pairs

    def next_unlabeled(self, strategy: PickStrategy = PickStrategy.FIFO) -> IssueReport | None:
        pending = [r for r in self.reports() if r.id not in self._labels]
        if not pending:
            return None
        if strategy is PickStrategy.FIFO:
            return pending[0]
        projects = sorted({r.project for r in self._reports.values()})
        for offset in range(len(projects)):
            project = projects[(self._rr_cursor + offset) % len(projects)]
            candidates = [r for r in pending if r.project == project]
            if candidates:
                self._rr_cursor = (self._rr_cursor + offset + 1) % len(projects)
                return candidates[0]
        return None

    def progress(self) -> tuple[int, int]:
        """(labeled count, total report count)."""
        labeled = sum(1 for rid in self._labels if rid in self._reports)
        return labeled, len(self._reports)

    # -- reporting -------------------------------------------------------

    def distribution(self) -> tuple[list[DistributionRow], DistributionRow]:
        """Per-project rows over actively labeled reports, plus a totals row."""
        counts: dict[str, list[int]] = {}
        for report, label in self.labeled_pairs():
            slot = counts.setdefault(report.project, [0, 0])
            slot[0 if label.verdict is Verdict.NON_ISSUE else 1] += 1
        rows = [
            DistributionRow(project=p, non_issue_count=c[0], issue_count=c[1])
            for p, c in sorted(counts.items())
        ]
        totals = DistributionRow(
            project="Total",
            non_issue_count=sum(r.non_issue_count for r in rows),
            issue_count=sum(r.issue_count for r in rows),
        )
        return rows, totals


# -- combined labeled-corpus file -------------------------------------------


def write_labeled_corpus(path: str | Path, pairs: Sequence[tuple[IssueReport, LabelRecord]]) -> None:
    """One file carrying each report together with its ground-truth label."""
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(json.dumps(CORPUS_HEADER) + "\n")
        for report, label in pairs:
            fh.write(
                json.dumps({"report": report.to_json(), "label": label.to_json()}, ensure_ascii=False) + "\n"
            )


def read_labeled_corpus(path: str | Path) -> list[tuple[IssueReport, LabelRecord]]:
    path = Path(path)
    pairs: list[tuple[IssueReport, LabelRecord]] = []
    seen: set[str] = set()
    for obj in _read_jsonl(path, CORPUS_HEADER):
        lineno = obj.pop("_line")
        try:
            report = IssueReport.from_json(obj["report"])
            label = LabelRecord.from_json(obj["label"])
        except (KeyError, ValueError, StoreError) as exc:
            raise IngestError(f"{path.name} line {lineno}: {exc}") from None
        if report.id in seen:
            raise IngestError(f"{path.name} line {lineno}: duplicate report id {report.id!r}")
        if label.report_id != report.id:
            raise IngestError(f"{path.name} line {lineno}: label does not reference its report")
        seen.add(report.id)
        pairs.append((report, label))
    return pairs
