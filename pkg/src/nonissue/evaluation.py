"""Stratified k-fold cross-validation and precision/recall/F1 reporting.

The positive class is the non-issue verdict. Per feature subset, the
vocabulary and idf weights are fitted on the training folds only; fold
metrics are averaged with an unweighted mean.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .features import Extractor, FeatureBag, FeatureExtractor, merge_bags
from .svm import LinearModel, TrainConfig, predict, train
from .vectorize import Vocabulary, fit_vocabulary, transform


class EvaluationError(Exception):
    pass


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignment: tuple[int, ...]

    def fold_indices(self, fold: int) -> tuple[list[int], list[int]]:
        """(train indices, test indices) for one fold."""
        train = [i for i, f in enumerate(self.assignment) if f != fold]
        test = [i for i, f in enumerate(self.assignment) if f == fold]
        return train, test


@dataclass(frozen=True)
class MetricsRow:
    feature_set: str
    precision: float
    recall: float
    f1: float
    fold_metrics: tuple[tuple[float, float, float], ...] = ()


# The seven non-empty extractor subsets, in ablation-report order.
ABLATION_SUBSETS: tuple[frozenset[Extractor], ...] = (
    frozenset({Extractor.NGRAMS}),
    frozenset({Extractor.MA}),
    frozenset({Extractor.PATTERNS}),
    frozenset({Extractor.NGRAMS, Extractor.MA}),
    frozenset({Extractor.NGRAMS, Extractor.PATTERNS}),
    frozenset({Extractor.MA, Extractor.PATTERNS}),
    frozenset({Extractor.NGRAMS, Extractor.MA, Extractor.PATTERNS}),
)

_SUBSET_LABEL_ORDER = (Extractor.NGRAMS, Extractor.MA, Extractor.PATTERNS)
_SUBSET_LABEL_NAMES = {Extractor.NGRAMS: "n-grams", Extractor.MA: "ma", Extractor.PATTERNS: "patterns"}


def subset_label(subset: Iterable[Extractor]) -> str:
    chosen = set(subset)
    return " + ".join(_SUBSET_LABEL_NAMES[e] for e in _SUBSET_LABEL_ORDER if e in chosen)


def stratified_folds(labels: Sequence[bool | int], k: int, seed: int) -> FoldPlan:
    """Assign each example to one of k folds, keeping class counts within one.

    Deterministic for a fixed seed: each class's indices are shuffled and
    dealt into k nearly equal chunks.
    """
    if k < 2:
        raise EvaluationError("k must be at least 2")
    flags = [bool(v) for v in labels]
    rng = np.random.default_rng(seed)
    assignment = [0] * len(flags)
    for cls in (False, True):
        idx = np.asarray([i for i, v in enumerate(flags) if v is cls], dtype=np.int64)
        if len(idx) < k:
            raise EvaluationError(
                f"class {cls} has only {len(idx)} members; use k <= {len(idx)}"
            )
        rng.shuffle(idx)
        base, extra = divmod(len(idx), k)
        pos = 0
        for fold in range(k):
            size = base + (1 if fold < extra else 0)
            for i in idx[pos : pos + size]:
                assignment[int(i)] = fold
            pos += size
    return FoldPlan(k=k, assignment=tuple(assignment))


def metrics(predictions: Sequence, truth: Sequence, positive) -> tuple[float, float, float]:
    """(precision, recall, F1) with the zero-denominator convention of 0."""
    if len(predictions) != len(truth):
        raise EvaluationError(f"got {len(predictions)} predictions for {len(truth)} truths")
    if len(truth) == 0:
        raise EvaluationError("cannot score an empty prediction list")
    tp = sum(1 for p, t in zip(predictions, truth) if p == positive and t == positive)
    fp = sum(1 for p, t in zip(predictions, truth) if p == positive and t != positive)
    fn = sum(1 for p, t in zip(predictions, truth) if p != positive and t == positive)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def run_fold(
    bags: Sequence[FeatureBag],
    labels: Sequence[int],
    train_idx: Sequence[int],
    test_idx: Sequence[int],
    config: TrainConfig,
) -> tuple[Vocabulary, LinearModel, list[int]]:
    """Fit on the training rows only and score the test rows.

    The vocabulary never sees test bags, so a token unique to a test
    document cannot influence any training artifact.
    """
    vocab = fit_vocabulary([bags[i] for i in train_idx])
    X_train = [transform(bags[i], vocab) for i in train_idx]
    y_train = [labels[i] for i in train_idx]
    model = train(X_train, y_train, config, n_features=len(vocab))
    preds = [predict(model, transform(bags[i], vocab))[0] for i in test_idx]
    return vocab, model, preds


def cross_validate(
    texts: Sequence[str],
    nonissue_flags: Sequence[bool],
    feature_sets: Sequence[Iterable[Extractor]],
    k: int,
    seed: int,
    train_config: TrainConfig,
    extractor: FeatureExtractor,
) -> list[MetricsRow]:
    """One metrics row per feature subset, in the given order."""
    if len(texts) != len(nonissue_flags):
        raise EvaluationError("texts and labels differ in length")
    plan = stratified_folds(nonissue_flags, k, seed)
    labels = [1 if flag else -1 for flag in nonissue_flags]
    parts: dict[Extractor, list[FeatureBag]] = {
        e: [extractor.part(e, t) for t in texts]
        for e in {ex for subset in feature_sets for ex in subset}
    }
    rows: list[MetricsRow] = []
    for subset in feature_sets:
        chosen = [e for e in (Extractor.NGRAMS, Extractor.MA, Extractor.PATTERNS) if e in set(subset)]
        if not chosen:
            raise EvaluationError("empty feature subset")
        bags = [merge_bags(*(parts[e][i] for e in chosen)) for i in range(len(texts))]
        fold_scores: list[tuple[float, float, float]] = []
        for fold in range(k):
            train_idx, test_idx = plan.fold_indices(fold)
            _, _, preds = run_fold(bags, labels, train_idx, test_idx, train_config)
            truth = [labels[i] for i in test_idx]
            fold_scores.append(metrics(preds, truth, positive=1))
        rows.append(
            MetricsRow(
                feature_set=subset_label(subset),
                precision=sum(s[0] for s in fold_scores) / k,
                recall=sum(s[1] for s in fold_scores) / k,
                f1=sum(s[2] for s in fold_scores) / k,
                fold_metrics=tuple(fold_scores),
            )
        )
    return rows


def render_metrics_table(rows: Sequence[MetricsRow]) -> str:
    """Ablation table with two-decimal formatting."""
    width = max([len("Features"), *(len(r.feature_set) for r in rows)])
    lines = [f"{'Features'.ljust(width)}  P     R     F"]
    for r in rows:
        lines.append(f"{r.feature_set.ljust(width)}  {r.precision:.2f}  {r.recall:.2f}  {r.f1:.2f}")
    return "\n".join(lines)


def write_metrics_records(rows: Sequence[MetricsRow], path: str | Path) -> None:
    """Machine-readable ablation report: one JSON object per feature subset."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for r in rows:
            fh.write(
                json.dumps(
                    {
                        "feature_set": r.feature_set,
                        "precision": r.precision,
                        "recall": r.recall,
                        "f1": r.f1,
                        "folds": [
                            {"precision": p, "recall": rc, "f1": f} for p, rc, f in r.fold_metrics
                        ],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_metrics_records(path: str | Path) -> list[MetricsRow]:
    rows: list[MetricsRow] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        rows.append(
            MetricsRow(
                feature_set=obj["feature_set"],
                precision=obj["precision"],
                recall=obj["recall"],
                f1=obj["f1"],
                fold_metrics=tuple((f["precision"], f["recall"], f["f1"]) for f in obj.get("folds", ())),
            )
        )
    return rows
