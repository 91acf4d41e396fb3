"""HTTP service: prediction with confidence gating plus the labeling endpoints.

Confidence is a logistic squash of the raw margin, 1/(1+exp(-margin*scale)).
A non-issue verdict below the confidence threshold is *gated*: it must be
verified by a human before the report is returned to the reporter. Issue
verdicts are never gated; the risk being managed is wrongly returning a
valid issue.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .features import FeatureExtractor
from .morphology import Analyzer
from .patterns import PatternCatalog, match_patterns
from .store import (
    CorpusStore,
    LabelInvariantError,
    LabelRecord,
    PickStrategy,
    StoreError,
    UnknownReportError,
    Verdict,
)
from .svm import ModelBundle, predict
from .vectorize import transform

DEFAULT_THRESHOLD = 0.75
DEFAULT_SCALE = 1.0


def confidence_of(margin: float, scale: float = DEFAULT_SCALE) -> float:
    return 1.0 / (1.0 + math.exp(-margin * scale))


@dataclass
class TriageService:
    """Shared state behind the HTTP app; model and catalog are immutable after load."""

    extractor: FeatureExtractor
    catalog: PatternCatalog
    analyzer: Analyzer
    store: CorpusStore | None = None
    bundle: ModelBundle | None = None
    threshold: float = DEFAULT_THRESHOLD
    scale: float = DEFAULT_SCALE
    eval_records_path: Path | None = None

    def predict_text(self, text: str) -> dict:
        if self.bundle is None:
            raise ModelNotLoadedError("no model loaded")
        from .features import Extractor

        enabled = {e for e in Extractor if e.value in self.bundle.extractors}
        bag = self.extractor.bag(text, enabled)
        x = transform(bag, self.bundle.vocabulary)
        label, margin = predict(self.bundle.model, x)
        verdict = Verdict.NON_ISSUE if label > 0 else Verdict.ISSUE
        conf = confidence_of(margin, self.scale)
        matched = sorted({m.code for m in match_patterns(text, self.catalog, self.analyzer)})
        return {
            "id": hashlib.sha256(text.encode("utf-8")).hexdigest()[:12],
            "verdict": verdict.value,
            "margin": margin,
            "confidence": conf,
            "matched_patterns": matched,
            "gated": verdict is Verdict.NON_ISSUE and conf < self.threshold,
        }


class ModelNotLoadedError(Exception):
    pass


class PredictIn(BaseModel):
    summary: str
    description: str = ""


class LabelIn(BaseModel):
    report_id: str
    verdict: str
    pattern_code: str | None = None
    labeler: str = "ui"


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def build_app(service: TriageService) -> FastAPI:
    app = FastAPI(title="nonissue triage service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return _error(400, "malformed_body", str(exc.errors()[:1]))

    @app.exception_handler(ModelNotLoadedError)
    async def model_missing(request: Request, exc: ModelNotLoadedError):
        return _error(503, "model_not_loaded", str(exc))

    @app.exception_handler(UnknownReportError)
    async def unknown_report(request: Request, exc: UnknownReportError):
        return _error(404, "unknown_report", str(exc))

    @app.exception_handler(LabelInvariantError)
    async def label_invariant(request: Request, exc: LabelInvariantError):
        return _error(409, "label_invariant", str(exc))

    @app.exception_handler(StoreError)
    async def store_error(request: Request, exc: StoreError):
        return _error(400, "store_error", str(exc))

    @app.get("/health")
    def health():
        if service.bundle is None:
            return _error(503, "model_not_loaded", "no model loaded")
        return {"status": "ok", "model_loaded": True, "threshold": service.threshold}

    @app.post("/predict")
    def predict_endpoint(body: PredictIn):
        text = f"{body.summary}\n{body.description}" if body.description else body.summary
        return service.predict_text(text)

    @app.get("/reports/next")
    def next_report(strategy: str = "Fifo"):
        if service.store is None:
            return _error(503, "store_not_loaded", "no store configured")
        picked = service.store.next_unlabeled(PickStrategy.parse(strategy))
        labeled, total = service.store.progress()
        return {
            "report": picked.to_json() if picked else None,
            "progress": {"labeled": labeled, "total": total},
        }

    @app.post("/labels")
    def post_label(body: LabelIn):
        if service.store is None:
            return _error(503, "store_not_loaded", "no store configured")
        try:
            verdict = Verdict(body.verdict)
        except ValueError:
            raise LabelInvariantError(f"unknown verdict {body.verdict!r}") from None
        record = LabelRecord(
            report_id=body.report_id,
            verdict=verdict,
            pattern_code=body.pattern_code,
            labeler=body.labeler,
            labeled_at=datetime.now(timezone.utc).replace(microsecond=0),
        )
        service.store.save_label(record)
        return {"status": "stored", "report_id": record.report_id}

    @app.get("/patterns")
    def patterns():
        return {
            "patterns": [
                {
                    "code": rule.code,
                    "trigger_roots": sorted(rule.trigger_roots),
                    "trigger_tags": [t.value for t in rule.trigger_tags],
                    "question_particle": rule.question_particle,
                    "scope": rule.scope.value,
                }
                for rule in service.catalog
            ]
        }

    @app.get("/stats/distribution")
    def distribution():
        if service.store is None:
            return _error(503, "store_not_loaded", "no store configured")
        rows, totals = service.store.distribution()

        def row_json(r):
            return {
                "project": r.project,
                "non_issue_count": r.non_issue_count,
                "issue_count": r.issue_count,
                "total": r.total,
                "non_issue_pct": r.non_issue_pct,
            }

        return {"rows": [row_json(r) for r in rows], "totals": row_json(totals)}

    @app.get("/stats/ablation")
    def ablation():
        path = service.eval_records_path
        if path is None or not path.exists():
            return {"rows": []}
        from .evaluation import read_metrics_records

        return {
            "rows": [
                {
                    "feature_set": r.feature_set,
                    "precision": r.precision,
                    "recall": r.recall,
                    "f1": r.f1,
                }
                for r in read_metrics_records(path)
            ]
        }

    return app
