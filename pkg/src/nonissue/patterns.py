"""Declarative catalog of non-issue discourse patterns and its matcher.

A rule fires in a sentence when all of its triggers co-occur there:

* root trigger — a token whose best analysis root is one of the rule's
  roots; for rules without a suffix trigger the literal lowercase token also
  counts (those roots are standalone words).
* tag-sequence trigger — a token with an analysis whose tag list contains
  the rule's tags as an ordered subsequence (further inflection may follow).
* question particle — a standalone token such as "mı" or "miyiz": one of
  mı/mi/mu/mü followed only by person or copular material. The particle is
  written as a separate word, so it is matched on the token, not by the
  analyzer.
"""
from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .morphology import Analyzer, Tag
from .turkish import tr_lower

_CODE_RE = re.compile(r"NI_[A-Z_]+\Z")

# mı/mi/mu/mü + optional person/copular endings ("miyiz", "mıdır", "mıydı").
_PARTICLE_RE = re.compile(
    r"m[ıiuü]"
    r"(y[ıiuü][mz]|s[ıiuü]n([ıiuü]z)?|d[ıiuü]r|yd[ıiuü]|ym[ıiuü]ş)?"
    r"\Z"
)


class CatalogError(Exception):
    """Malformed catalog document; message carries the line number."""


class Scope(enum.Enum):
    SENTENCE = "Sentence"
    DOCUMENT = "Document"


class Reason(enum.Enum):
    ROOT_HIT = "RootHit"
    SUFFIX_HIT = "SuffixHit"
    PARTICLE_HIT = "ParticleHit"


@dataclass(frozen=True)
class PatternRule:
    code: str
    trigger_roots: frozenset[str] = frozenset()
    trigger_tags: tuple[Tag, ...] = ()
    question_particle: bool = False
    scope: Scope = Scope.SENTENCE

    def __post_init__(self) -> None:
        if not _CODE_RE.match(self.code):
            raise CatalogError(f"invalid pattern code {self.code!r}")
        if self.trigger_tags and self.question_particle:
            raise CatalogError(f"{self.code}: suffix descriptor cannot be both tags and particle")
        if not (self.trigger_roots or self.trigger_tags or self.question_particle):
            raise CatalogError(f"{self.code}: rule has no trigger")

    @property
    def has_suffix_trigger(self) -> bool:
        return bool(self.trigger_tags) or self.question_particle


@dataclass(frozen=True)
class PatternMatch:
    code: str
    sentence_index: int
    evidence: tuple[tuple[int, Reason], ...]


class PatternCatalog:
    def __init__(self, rules: Iterable[PatternRule]):
        ordered = tuple(rules)
        codes = [r.code for r in ordered]
        for code in codes:
            if codes.count(code) > 1:
                raise CatalogError(f"duplicate pattern code {code!r}")
        self._rules = ordered

    @property
    def rules(self) -> tuple[PatternRule, ...]:
        return self._rules

    @property
    def codes(self) -> frozenset[str]:
        return frozenset(r.code for r in self._rules)

    def __iter__(self):
        return iter(self._rules)

    def __len__(self) -> int:
        return len(self._rules)


def is_question_particle(token: str) -> bool:
    return bool(_PARTICLE_RE.match(tr_lower(token)))


def _contains_subsequence(tags: Sequence[Tag], wanted: Sequence[Tag]) -> bool:
    it = iter(tags)
    return all(any(t is w for t in it) for w in wanted)


def split_sentences(text: str) -> list[str]:
    """Split on sentence terminators (. ? !) and newlines; drops empty pieces."""
    parts = re.split(r"[.?!\n]+", text)
    return [p.strip() for p in parts if p.strip()]


def match_patterns(text: str, catalog: PatternCatalog, analyzer: Analyzer) -> list[PatternMatch]:
    """All pattern matches in ``text``, ordered by (sentence index, code).

    Token indices in the evidence are sentence-local. Document-scoped rules
    are evaluated over the whole text as a single token sequence and report
    sentence index 0.
    """
    from .features import tokenize  # local import: features also imports this module

    sentences = split_sentences(text)
    sentence_tokens = [tokenize(s) for s in sentences]
    matches: list[PatternMatch] = []
    for rule in catalog:
        if rule.scope is Scope.SENTENCE:
            for si, tokens in enumerate(sentence_tokens):
                evidence = _rule_evidence(rule, tokens, analyzer)
                if evidence is not None:
                    matches.append(PatternMatch(rule.code, si, evidence))
        else:
            all_tokens = [t for tokens in sentence_tokens for t in tokens]
            evidence = _rule_evidence(rule, all_tokens, analyzer)
            if evidence is not None:
                matches.append(PatternMatch(rule.code, 0, evidence))
    matches.sort(key=lambda m: (m.sentence_index, m.code))
    return matches


def _rule_evidence(
    rule: PatternRule, tokens: Sequence[str], analyzer: Analyzer
) -> tuple[tuple[int, Reason], ...] | None:
    evidence: list[tuple[int, Reason]] = []
    if rule.trigger_roots:
        root_hits = []
        for i, token in enumerate(tokens):
            analyses = analyzer.analyze(token) if token else []
            if analyses and analyses[0].root in rule.trigger_roots:
                root_hits.append((i, Reason.ROOT_HIT))
            elif not rule.has_suffix_trigger and tr_lower(token) in rule.trigger_roots:
                root_hits.append((i, Reason.ROOT_HIT))
        if not root_hits:
            return None
        evidence.extend(root_hits)
    if rule.trigger_tags:
        suffix_hits = [
            (i, Reason.SUFFIX_HIT)
            for i, token in enumerate(tokens)
            if token
            and any(_contains_subsequence(a.tags, rule.trigger_tags) for a in analyzer.analyze(token))
        ]
        if not suffix_hits:
            return None
        evidence.extend(suffix_hits)
    if rule.question_particle:
        particle_hits = [(i, Reason.PARTICLE_HIT) for i, t in enumerate(tokens) if is_question_particle(t)]
        if not particle_hits:
            return None
        evidence.extend(particle_hits)
    if not evidence:
        return None
    evidence.sort(key=lambda e: (e[0], e[1].value))
    return tuple(evidence)


# -- catalog file loading --------------------------------------------------

_TAG_BY_NAME = {t.value: t for t in Tag}
_SCOPE_BY_NAME = {s.value: s for s in Scope}


def parse_catalog(text: str) -> PatternCatalog:
    """Parse catalog content: ``code<TAB>roots<TAB>suffix-descriptor<TAB>scope``.

    Roots are comma-separated ("-" for none). The suffix descriptor is
    either "-" (none), "QuestionParticle", or "+"-joined tag names.
    """
    rules: list[PatternRule] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise CatalogError(f"catalog line {lineno}: expected 4 tab-separated fields")
        code, roots_text, suffix_text, scope_text = fields
        if code in seen:
            raise CatalogError(f"catalog line {lineno}: duplicate pattern code {code!r}")
        seen.add(code)
        roots = frozenset(
            r.strip() for r in roots_text.split(",") if r.strip() and r.strip() != "-"
        )
        trigger_tags: tuple[Tag, ...] = ()
        question_particle = False
        if suffix_text == "QuestionParticle":
            question_particle = True
        elif suffix_text != "-":
            try:
                trigger_tags = tuple(_TAG_BY_NAME[name] for name in suffix_text.split("+"))
            except KeyError as exc:
                raise CatalogError(f"catalog line {lineno}: unknown tag {exc.args[0]!r}") from None
        scope = _SCOPE_BY_NAME.get(scope_text)
        if scope is None:
            raise CatalogError(f"catalog line {lineno}: unknown scope {scope_text!r}")
        try:
            rules.append(
                PatternRule(
                    code=code,
                    trigger_roots=roots,
                    trigger_tags=trigger_tags,
                    question_particle=question_particle,
                    scope=scope,
                )
            )
        except CatalogError as exc:
            raise CatalogError(f"catalog line {lineno}: {exc}") from None
    return PatternCatalog(rules)


def load_catalog(path: str | Path) -> PatternCatalog:
    return parse_catalog(Path(path).read_text(encoding="utf-8"))


@functools.lru_cache(maxsize=1)
def default_catalog() -> PatternCatalog:
    """The five-pattern catalog shipped with the package."""
    text = resources.files("nonissue.data").joinpath("pattern_catalog.tsv").read_text(encoding="utf-8")
    return parse_catalog(text)
