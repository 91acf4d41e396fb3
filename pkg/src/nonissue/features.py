"""Feature extractors: token n-grams, verb morphology, and discourse patterns.

Each extractor emits a bag of namespaced tokens (``ng:``, ``ma:``, ``pat:``)
so the three bags merge without collisions. Morphology features use semantic
tag names, never surface strings: the same tag can be spelled many ways.
"""
from __future__ import annotations

import enum
import functools
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .morphology import Analyzer
from .patterns import PatternCatalog, match_patterns
from .turkish import tr_lower

FeatureBag = dict[str, int]

# Maximal runs of letters and digits (unicode-aware, underscore excluded).
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


class Extractor(enum.Enum):
    NGRAMS = "ngrams"
    MA = "ma"
    PATTERNS = "patterns"


ALL_EXTRACTORS = frozenset(Extractor)


@dataclass(frozen=True)
class ExtractorConfig:
    ngram_min: int = 1
    ngram_max: int = 2
    stopwords: frozenset[str] = frozenset()
    enabled: frozenset[Extractor] = ALL_EXTRACTORS
    drop_digit_tokens: bool = False

    def __post_init__(self) -> None:
        if not (1 <= self.ngram_min <= self.ngram_max):
            raise ValueError("require 1 <= ngram_min <= ngram_max")
        if not self.enabled:
            raise ValueError("at least one extractor must be enabled")


def tokenize(text: str) -> list[str]:
    """Turkish-lowercased tokens: maximal runs of letters and digits."""
    return _TOKEN_RE.findall(tr_lower(text))


def extract_ngrams(text: str, config: ExtractorConfig) -> FeatureBag:
    """``ng:``-prefixed n-gram counts after stopword removal."""
    tokens = [t for t in tokenize(text) if t not in config.stopwords]
    if config.drop_digit_tokens:
        tokens = [t for t in tokens if not t.isdigit()]
    bag: Counter[str] = Counter()
    for n in range(config.ngram_min, config.ngram_max + 1):
        for i in range(len(tokens) - n + 1):
            bag["ng:" + " ".join(tokens[i : i + n])] += 1
    return dict(bag)


def extract_ma(text: str, analyzer: Analyzer) -> FeatureBag:
    """Root and semantic-tag features for each detected verb."""
    tokens = tokenize(text)
    bag: Counter[str] = Counter()
    for _, analysis in analyzer.detect_verbs(tokens):
        bag[f"ma:root={analysis.root}"] += 1
        for tag in analysis.tags:
            bag[f"ma:{tag.value}"] += 1
    return dict(bag)


def extract_patterns(text: str, catalog: PatternCatalog, analyzer: Analyzer) -> FeatureBag:
    """Per-pattern counts: one count per sentence the pattern fires in."""
    bag: Counter[str] = Counter()
    for match in match_patterns(text, catalog, analyzer):
        bag[f"pat:{match.code}"] += 1
    return dict(bag)


def merge_bags(*bags: Mapping[str, int]) -> FeatureBag:
    merged: Counter[str] = Counter()
    for bag in bags:
        merged.update(bag)
    return dict(merged)


def compose(
    text: str,
    config: ExtractorConfig,
    analyzer: Analyzer,
    catalog: PatternCatalog,
) -> FeatureBag:
    """Union of the enabled extractors' bags (namespaces are disjoint)."""
    parts: list[FeatureBag] = []
    if Extractor.NGRAMS in config.enabled:
        parts.append(extract_ngrams(text, config))
    if Extractor.MA in config.enabled:
        parts.append(extract_ma(text, analyzer))
    if Extractor.PATTERNS in config.enabled:
        parts.append(extract_patterns(text, catalog, analyzer))
    return merge_bags(*parts)


class FeatureExtractor:
    """Bundles analyzer + catalog + config, caching per-extractor bags by text.

    The cache makes evaluating many extractor subsets over the same corpus
    cheap: each text is tokenized and analyzed once per extractor.
    """

    def __init__(self, config: ExtractorConfig, analyzer: Analyzer, catalog: PatternCatalog):
        self.config = config
        self.analyzer = analyzer
        self.catalog = catalog
        self._cache: dict[tuple[Extractor, str], FeatureBag] = {}

    def part(self, extractor: Extractor, text: str) -> FeatureBag:
        key = (extractor, text)
        bag = self._cache.get(key)
        if bag is None:
            if extractor is Extractor.NGRAMS:
                bag = extract_ngrams(text, self.config)
            elif extractor is Extractor.MA:
                bag = extract_ma(text, self.analyzer)
            else:
                bag = extract_patterns(text, self.catalog, self.analyzer)
            self._cache[key] = bag
        return bag

    def bag(self, text: str, enabled: Iterable[Extractor] | None = None) -> FeatureBag:
        selected = frozenset(enabled) if enabled is not None else self.config.enabled
        if not selected:
            raise ValueError("at least one extractor must be enabled")
        order = [Extractor.NGRAMS, Extractor.MA, Extractor.PATTERNS]
        return merge_bags(*(self.part(e, text) for e in order if e in selected))


def parse_stopwords(text: str) -> frozenset[str]:
    return frozenset(tr_lower(line.strip()) for line in text.splitlines() if line.strip())


def load_stopwords(path: str | Path) -> frozenset[str]:
    return parse_stopwords(Path(path).read_text(encoding="utf-8"))


@functools.lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    text = resources.files("nonissue.data").joinpath("stopwords.txt").read_text(encoding="utf-8")
    return parse_stopwords(text)


def default_config(enabled: frozenset[Extractor] = ALL_EXTRACTORS) -> ExtractorConfig:
    return ExtractorConfig(stopwords=default_stopwords(), enabled=enabled)
