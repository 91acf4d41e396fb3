"""Linear max-margin binary classifier with hinge loss.

Minimizes  (1/2)||w||^2 + C * sum_i max(0, 1 - y_i (w . x_i + b))  by
full-batch subgradient descent with Armijo backtracking. Every accepted
epoch strictly decreases the objective, so the per-epoch objective sequence
is non-increasing by construction; training stops when the decrease falls
below the tolerance or no descent step exists (the optimum sits on a hinge
kink, where the one-sided gradient stops pointing downhill).

The bias is an explicit, unregularized intercept. The positive class
(non-issue) is encoded +1; a margin of exactly 0 predicts the negative
class, so ties never auto-flag a report as non-issue.

The epoch kernels (margin and subgradient accumulation over CSR rows) come
from a compiled extension when available, with a NumPy fallback selected at
import time; force one with NONISSUE_SVM_BACKEND=compiled|numpy.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .vectorize import SparseVector, Vocabulary, to_csr


class TrainError(Exception):
    """Invalid training input (single class, size mismatch, bad config)."""


def _load_kernel():
    forced = os.environ.get("NONISSUE_SVM_BACKEND", "").strip().lower()
    if forced == "numpy":
        from . import _svm_numpy

        return _svm_numpy, "numpy"
    if forced == "compiled":
        from . import _svm_kernel  # type: ignore[attr-defined]

        return _svm_kernel, "compiled"
    try:
        from . import _svm_kernel  # type: ignore[attr-defined]

        return _svm_kernel, "compiled"
    except ImportError:
        from . import _svm_numpy

        return _svm_numpy, "numpy"


KERNEL, KERNEL_BACKEND = _load_kernel()

_ARMIJO_C = 1e-4
_MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class TrainConfig:
    C: float = 1.0
    max_epochs: int = 1000
    tolerance: float = 1e-4
    seed: int = 0

    def __post_init__(self) -> None:
        if self.C <= 0 or self.max_epochs <= 0 or self.tolerance <= 0:
            raise TrainError("C, max_epochs and tolerance must be positive")


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    C: float
    positive_label: str = "NonIssue"
    objective_history: tuple[float, ...] = field(default=(), repr=False, compare=False)

    @property
    def n_features(self) -> int:
        return int(self.weights.shape[0])


def hinge_objective(
    w: np.ndarray,
    b: float,
    indptr: np.ndarray,
    indices: np.ndarray,
    data: np.ndarray,
    y: np.ndarray,
    C: float,
) -> float:
    m = KERNEL.margins(indptr, indices, data, y, w, b)
    return 0.5 * float(np.dot(w, w)) + C * float(np.sum(np.maximum(0.0, 1.0 - m)))


def train(
    X: Sequence[SparseVector],
    y: Sequence[int],
    config: TrainConfig,
    n_features: int,
) -> LinearModel:
    """Fit the classifier on sparse rows with labels in {+1, -1}."""
    if len(X) != len(y):
        raise TrainError(f"got {len(X)} vectors but {len(y)} labels")
    if len(X) < 2:
        raise TrainError("need at least two training examples")
    labels = set(int(v) for v in y)
    if not labels <= {-1, +1}:
        raise TrainError(f"labels must be +1 or -1, got {sorted(labels)}")
    if len(labels) < 2:
        raise TrainError("training data contains a single class; both classes are required")
    for vec in X:
        if vec.columns and vec.columns[-1] >= n_features:
            raise TrainError(f"vector column {vec.columns[-1]} out of range for {n_features} features")

    indptr, indices, data = to_csr(X)
    yarr = np.asarray([float(v) for v in y], dtype=np.float64)
    C = float(config.C)
    w = np.zeros(n_features, dtype=np.float64)
    b = 0.0
    eta = 1.0

    m = KERNEL.margins(indptr, indices, data, yarr, w, b)
    objective = 0.5 * float(np.dot(w, w)) + C * float(np.sum(np.maximum(0.0, 1.0 - m)))
    history = [objective]

    for _ in range(config.max_epochs):
        g_hinge, coef = KERNEL.hinge_grad(indptr, indices, data, yarr, m, C, n_features)
        g = g_hinge + w
        g_b = float(np.sum(coef))
        descent = float(np.dot(g, g)) + g_b * g_b
        if descent == 0.0:
            break
        s = KERNEL.margins(indptr, indices, data, yarr, g, g_b)  # y_i (g . x_i + g_b)
        ww = float(np.dot(w, w))
        wg = float(np.dot(w, g))
        gg = float(np.dot(g, g))

        step = eta
        accepted = False
        candidate_obj = objective
        for _ in range(_MAX_BACKTRACKS):
            quad = 0.5 * (ww - 2.0 * step * wg + step * step * gg)
            hinge = float(np.sum(np.maximum(0.0, 1.0 - (m - step * s))))
            candidate_obj = quad + C * hinge
            if candidate_obj <= objective - _ARMIJO_C * step * descent:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break  # no descent step exists: converged onto a kink
        w -= step * g
        b -= step * g_b
        eta = step * 2.0
        m = KERNEL.margins(indptr, indices, data, yarr, w, b)
        objective_new = 0.5 * float(np.dot(w, w)) + C * float(np.sum(np.maximum(0.0, 1.0 - m)))
        history.append(objective_new)
        decrease = objective - objective_new
        objective = objective_new
        if decrease < config.tolerance:
            break

    return LinearModel(weights=w, bias=b, C=C, objective_history=tuple(history))


def decision(model: LinearModel, x: SparseVector) -> float:
    """Raw margin w . x + b."""
    w = model.weights
    return float(sum(w[c] * v for c, v in zip(x.columns, x.values)) + model.bias)


def predict(model: LinearModel, x: SparseVector) -> tuple[int, float]:
    """(label, margin): +1 (non-issue) iff margin > 0, ties go to -1 (issue)."""
    margin = decision(model, x)
    return (1 if margin > 0.0 else -1), margin


# -- persistence -----------------------------------------------------------

_FORMAT_LINE = "nonissue-model v1"


@dataclass(frozen=True)
class ModelBundle:
    """Everything needed to score raw text: vocabulary, weights, extractor subset."""

    vocabulary: Vocabulary
    model: LinearModel
    extractors: tuple[str, ...]


def save_model(path: str | Path, bundle: ModelBundle) -> None:
    """Versioned, line-oriented text layout so model diffs are reviewable."""
    vocab, model = bundle.vocabulary, bundle.model
    if len(vocab) != model.n_features:
        raise TrainError("vocabulary size does not match weight vector length")
    lines = [
        _FORMAT_LINE,
        f"features\t{len(vocab)}",
        f"documents\t{vocab.doc_count}",
        f"extractors\t{','.join(bundle.extractors)}",
        f"C\t{model.C!r}",
        f"bias\t{model.bias!r}",
        f"positive_label\t{model.positive_label}",
    ]
    tokens = vocab.tokens
    order = sorted(range(len(tokens)), key=lambda c: tokens[c])
    for c in order:
        lines.append(f"{tokens[c]}\t{float(vocab.idf[c])!r}\t{float(model.weights[c])!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> ModelBundle:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or lines[0] != _FORMAT_LINE:
        raise TrainError(f"{path}: not a {_FORMAT_LINE!r} file")
    header: dict[str, str] = {}
    body_start = 1
    for i, line in enumerate(lines[1:], start=1):
        key, _, value = line.partition("\t")
        if key in {"features", "documents", "extractors", "C", "bias", "positive_label"}:
            header[key] = value
            body_start = i + 1
        else:
            break
    try:
        n_features = int(header["features"])
        doc_count = int(header["documents"])
        C = float(header["C"])
        bias = float(header["bias"])
        positive_label = header["positive_label"]
        extractors = tuple(e for e in header["extractors"].split(",") if e)
    except KeyError as exc:
        raise TrainError(f"{path}: missing header field {exc.args[0]!r}") from None
    entries: list[tuple[str, float, float]] = []
    for lineno, line in enumerate(lines[body_start:], start=body_start + 1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise TrainError(f"{path}:{lineno}: expected token<TAB>idf<TAB>weight")
        entries.append((fields[0], float(fields[1]), float(fields[2])))
    if len(entries) != n_features:
        raise TrainError(f"{path}: header says {n_features} features, found {len(entries)}")
    entries.sort(key=lambda e: e[0])
    index = {token: c for c, (token, _, _) in enumerate(entries)}
    idf = tuple(e[1] for e in entries)
    weights = np.asarray([e[2] for e in entries], dtype=np.float64)
    vocab = Vocabulary(index=index, idf=idf, doc_count=doc_count)
    model = LinearModel(weights=weights, bias=bias, C=C, positive_label=positive_label)
    return ModelBundle(vocabulary=vocab, model=model, extractors=extractors)
