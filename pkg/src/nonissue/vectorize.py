"""tf-idf vectorization over feature bags.

Weighting is raw count × smoothed idf, ln((1+N)/(1+df)) + 1, followed by
L2 document normalization; the smoothing keeps every idf strictly positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np


@dataclass(frozen=True)
class Vocabulary:
    index: dict[str, int]  # feature token -> dense column id
    idf: tuple[float, ...]
    doc_count: int

    def __len__(self) -> int:
        return len(self.index)

    @property
    def tokens(self) -> list[str]:
        ordered = [""] * len(self.index)
        for token, col in self.index.items():
            ordered[col] = token
        return ordered


@dataclass(frozen=True)
class SparseVector:
    columns: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.values):
            raise ValueError("columns and values must have equal length")
        if any(a >= b for a, b in zip(self.columns, self.columns[1:])):
            raise ValueError("columns must be strictly increasing")
        if any(v == 0.0 or not math.isfinite(v) for v in self.values):
            raise ValueError("values must be finite and nonzero")

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.values))


def fit_vocabulary(bags: Sequence[Mapping[str, int]]) -> Vocabulary:
    """Vocabulary over every key in ``bags``; columns in lexicographic order."""
    if len(bags) == 0:
        raise ValueError("cannot fit a vocabulary on zero documents")
    df: dict[str, int] = {}
    for bag in bags:
        for key in bag:
            df[key] = df.get(key, 0) + 1
    tokens = sorted(df)
    n = len(bags)
    idf = tuple(math.log((1.0 + n) / (1.0 + df[t])) + 1.0 for t in tokens)
    return Vocabulary(index={t: c for c, t in enumerate(tokens)}, idf=idf, doc_count=n)


def transform(bag: Mapping[str, int], vocab: Vocabulary) -> SparseVector:
    """tf-idf vector for one bag, L2-normalized; out-of-vocabulary keys drop out."""
    pairs: list[tuple[int, float]] = []
    for key, count in bag.items():
        col = vocab.index.get(key)
        if col is not None:
            pairs.append((col, count * vocab.idf[col]))
    pairs.sort()
    if not pairs:
        return SparseVector((), ())
    norm = math.sqrt(sum(v * v for _, v in pairs))
    return SparseVector(
        columns=tuple(c for c, _ in pairs),
        values=tuple(v / norm for _, v in pairs),
    )


def to_csr(vectors: Sequence[SparseVector]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pack sparse vectors row-wise into CSR arrays (indptr, indices, data)."""
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    for i, vec in enumerate(vectors):
        indptr[i + 1] = indptr[i] + len(vec.columns)
    indices = np.empty(int(indptr[-1]), dtype=np.int64)
    data = np.empty(int(indptr[-1]), dtype=np.float64)
    for i, vec in enumerate(vectors):
        start, stop = int(indptr[i]), int(indptr[i + 1])
        indices[start:stop] = vec.columns
        data[start:stop] = vec.values
    return indptr, indices, data
