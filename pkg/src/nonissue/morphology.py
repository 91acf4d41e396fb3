"""Morphological decomposition of Turkish words into root + suffix tags.

A word is analyzed by picking a lexicon root that prefixes the word and
consuming the remainder with suffix rules. Each rule carries a semantic tag,
a surface archetype written with harmony meta-symbols, and a slot number; a
suffix may only attach at a slot greater than or equal to the previous one.

Archetype notation:
    A   low vowel, resolved to a/e by front harmony
    I   high vowel, resolved to ı/i/u/ü by front + rounding harmony
    D   dental stop, resolved to t after a voiceless final, else d
    (x) buffer letter: a buffer consonant (e.g. "(y)") is emitted only after
        a vowel-final stem, a buffer vowel (e.g. "(I)") only after a
        consonant-final stem
Everything else is a literal lowercase letter, e.g. "mAlI", "(y)DI", "(s)I".
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .turkish import (
    FRONT_VOWELS,
    ROUNDED_VOWELS,
    VOICELESS_FINALS,
    VOWELS,
    is_turkish_letter,
    last_vowel,
    tr_lower,
)


class MorphologyError(Exception):
    """Base class for analyzer errors."""


class InvalidArchetypeError(MorphologyError):
    """Archetype string does not follow the meta-form notation."""


class NoHarmonyAnchorError(MorphologyError):
    """Stem has no vowel to harmonize against."""


class LexiconFormatError(MorphologyError):
    """Malformed lexicon or suffix-rule file; message carries the line number."""


class Pos(enum.Enum):
    VERB = "Verb"
    NOUN = "Noun"
    ADJECTIVE = "Adjective"
    ADVERB = "Adverb"
    OTHER = "Other"


class Tag(enum.Enum):
    PASSIVE = "Passive"
    CAUSATIVE = "Causative"
    ABILITY = "Ability"
    NEGATIVE = "Negative"
    PAST_TENSE = "PastTense"
    OBLIGATIVE = "Obligative"
    VERBAL_NOUN = "VerbalNoun"
    FIRST_PERSON_PLURAL = "FirstPersonPlural"
    THIRD_PERSON_SINGULAR = "ThirdPersonSingular"
    COPULAR_PAST = "CopularPast"
    POSSESSIVE_3SG = "Possessive3sg"
    CASE_MARKER = "CaseMarker"
    QUESTION_PARTICLE = "QuestionParticle"


_META_CHARS = frozenset("AID")

# A finite verb form ending in one of these tags carries an unmarked third
# person singular: the tag is appended without a surface segment.
FINITE_FINAL_TAGS = frozenset({Tag.PAST_TENSE, Tag.COPULAR_PAST, Tag.OBLIGATIVE})


def _parse_archetype(archetype: str) -> tuple[tuple[bool, str], ...]:
    """Split an archetype into (is_buffer, char) items, validating the notation."""
    if not archetype:
        raise InvalidArchetypeError("empty archetype")
    items: list[tuple[bool, str]] = []
    i = 0
    while i < len(archetype):
        ch = archetype[i]
        if ch == "(":
            if i + 2 >= len(archetype) or archetype[i + 2] != ")":
                raise InvalidArchetypeError(f"unbalanced buffer group in {archetype!r}")
            items.append((True, archetype[i + 1]))
            i += 3
        elif ch == ")":
            raise InvalidArchetypeError(f"stray ')' in {archetype!r}")
        else:
            items.append((False, ch))
            i += 1
    for _, ch in items:
        if ch not in _META_CHARS and not is_turkish_letter(ch):
            raise InvalidArchetypeError(f"invalid symbol {ch!r} in {archetype!r}")
    if all(is_buf for is_buf, _ in items):
        raise InvalidArchetypeError(f"archetype {archetype!r} has no unconditional segment")
    return tuple(items)


def resolve_surface(archetype: str, stem: str, *, front_override: bool | None = None) -> str:
    """Realize an archetype against a stem.

    Harmony is progressive: once the suffix emits a vowel of its own, later
    meta-vowels in the same archetype harmonize with it. ``front_override``
    forces the stem's frontness class (loanword exceptions such as "saat").
    """
    items = _parse_archetype(archetype)
    if not stem:
        raise NoHarmonyAnchorError("empty stem")
    anchor = last_vowel(stem)
    if anchor is None:
        raise NoHarmonyAnchorError(f"stem {stem!r} contains no vowel")
    front = (anchor in FRONT_VOWELS) if front_override is None else front_override
    rounded = anchor in ROUNDED_VOWELS
    last = stem[-1]
    out: list[str] = []

    def resolved(ch: str) -> str:
        if ch == "A":
            return "e" if front else "a"
        if ch == "I":
            if front:
                return "ü" if rounded else "i"
            return "u" if rounded else "ı"
        if ch == "D":
            return "t" if last in VOICELESS_FINALS else "d"
        return ch

    for is_buffer, ch in items:
        if is_buffer:
            is_vowel_buffer = ch in ("A", "I") or ch in VOWELS
            if is_vowel_buffer != (last not in VOWELS):
                continue
        sym = resolved(ch)
        out.append(sym)
        last = sym
        if sym in VOWELS:
            front = sym in FRONT_VOWELS
            rounded = sym in ROUNDED_VOWELS
    return "".join(out)


@dataclass(frozen=True)
class LexiconEntry:
    root: str
    pos: Pos
    priority: int = 0
    front_override: bool | None = None  # harmony-class exception for loanwords

    def __post_init__(self) -> None:
        if not self.root:
            raise LexiconFormatError("empty root")
        if self.root != tr_lower(self.root) or not all(is_turkish_letter(c) for c in self.root):
            raise LexiconFormatError(f"root {self.root!r} must be lowercase Turkish letters")


@dataclass(frozen=True)
class SuffixRule:
    tag: Tag
    archetype: str
    slot: int

    def __post_init__(self) -> None:
        _parse_archetype(self.archetype)


@dataclass(frozen=True)
class MorphAnalysis:
    """One decomposition: root, part of speech, semantic tags, surface segments.

    The concatenated segmentation equals the lowercased input word. The
    zero-morph third person singular appears in ``tags`` without a segment;
    every other tag owns exactly one segment.
    """

    root: str
    pos: Pos
    tags: tuple[Tag, ...]
    segmentation: tuple[str, ...]

    @property
    def surface(self) -> str:
        return "".join(self.segmentation)


class Analyzer:
    """Immutable lexicon + rule set with a memoized analysis cache.

    ``analyze`` and ``detect_verbs`` are pure; the cache only stores results
    of the pure function, so instances are safe to share across threads.
    """

    def __init__(self, lexicon: Iterable[LexiconEntry], rules: Iterable[SuffixRule]):
        entries = sorted(lexicon, key=lambda e: (e.root, e.pos.value))
        seen: set[tuple[str, Pos]] = set()
        for entry in entries:
            key = (entry.root, entry.pos)
            if key in seen:
                raise LexiconFormatError(f"duplicate lexicon entry {entry.root!r}/{entry.pos.value}")
            seen.add(key)
        self._entries: tuple[LexiconEntry, ...] = tuple(entries)
        self._rules: tuple[SuffixRule, ...] = tuple(
            sorted(rules, key=lambda r: (r.slot, r.tag.value, r.archetype))
        )
        self._cache: dict[str, tuple[MorphAnalysis, ...]] = {}

    @property
    def entries(self) -> tuple[LexiconEntry, ...]:
        return self._entries

    @property
    def rules(self) -> tuple[SuffixRule, ...]:
        return self._rules

    def analyze(self, word: str) -> list[MorphAnalysis]:
        """All decompositions of ``word``, best-ranked first; [] if none.

        Ranking: fewest tags, then higher lexicon priority, then longer root,
        then later morphotactic slots, then a lexicographic fallback so the
        order is total and deterministic.
        """
        w = tr_lower(word)
        if not w:
            raise ValueError("word is empty after lowercasing")
        cached = self._cache.get(w)
        if cached is None:
            cached = tuple(self._analyze_uncached(w))
            self._cache[w] = cached
        return list(cached)

    def detect_verbs(self, tokens: Sequence[str]) -> list[tuple[int, MorphAnalysis]]:
        """(index, best analysis) for each token whose best analysis is a verb."""
        hits: list[tuple[int, MorphAnalysis]] = []
        for i, token in enumerate(tokens):
            if not token:
                continue
            analyses = self.analyze(token)
            if analyses and analyses[0].pos is Pos.VERB:
                hits.append((i, analyses[0]))
        return hits

    # -- search ---------------------------------------------------------

    def _analyze_uncached(self, w: str) -> list[MorphAnalysis]:
        candidates: dict[tuple, tuple] = {}
        for entry in self._entries:
            if w.startswith(entry.root):
                self._walk(
                    w,
                    entry,
                    consumed=entry.root,
                    min_slot=0,
                    tags=[],
                    segments=[entry.root],
                    slots=[],
                    override=entry.front_override,
                    out=candidates,
                )
        ranked = sorted(candidates.values(), key=lambda item: item[0])
        return [analysis for _, analysis in ranked]

    def _walk(
        self,
        w: str,
        entry: LexiconEntry,
        consumed: str,
        min_slot: int,
        tags: list[Tag],
        segments: list[str],
        slots: list[int],
        override: bool | None,
        out: dict[tuple, tuple],
    ) -> None:
        if consumed == w:
            final_tags = list(tags)
            if entry.pos is Pos.VERB and final_tags and final_tags[-1] in FINITE_FINAL_TAGS:
                final_tags.append(Tag.THIRD_PERSON_SINGULAR)
            analysis = MorphAnalysis(
                root=entry.root,
                pos=entry.pos,
                tags=tuple(final_tags),
                segmentation=tuple(segments),
            )
            dedupe = (analysis.root, analysis.pos, analysis.tags, analysis.segmentation)
            key = (
                len(analysis.tags),
                -entry.priority,
                -len(entry.root),
                tuple(-s for s in slots),
                tuple(t.value for t in analysis.tags),
                analysis.segmentation,
                analysis.pos.value,
            )
            prior = out.get(dedupe)
            if prior is None or key < prior[0]:
                out[dedupe] = (key, analysis)
            return
        for rule in self._rules:
            if rule.slot < min_slot:
                continue
            try:
                surface = resolve_surface(rule.archetype, consumed, front_override=override)
            except NoHarmonyAnchorError:
                return  # vowelless stem: no suffix can attach
            if not surface or not w.startswith(surface, len(consumed)):
                continue
            tags.append(rule.tag)
            segments.append(surface)
            slots.append(rule.slot)
            next_override = None if any(c in VOWELS for c in surface) else override
            self._walk(w, entry, consumed + surface, rule.slot, tags, segments, slots, next_override, out)
            tags.pop()
            segments.pop()
            slots.pop()


# -- file loading --------------------------------------------------------

_POS_BY_NAME = {p.value: p for p in Pos}
_TAG_BY_NAME = {t.value: t for t in Tag}


def _data_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        yield lineno, line


def parse_lexicon(text: str) -> list[LexiconEntry]:
    """Parse lexicon file content: ``root<TAB>pos<TAB>priority[<TAB>front|back]``."""
    entries: list[LexiconEntry] = []
    seen: set[tuple[str, Pos]] = set()
    for lineno, line in _data_lines(text):
        fields = line.split("\t")
        if len(fields) not in (3, 4):
            raise LexiconFormatError(f"lexicon line {lineno}: expected 3 or 4 tab-separated fields")
        root, pos_name, prio_text = fields[0], fields[1], fields[2]
        pos = _POS_BY_NAME.get(pos_name)
        if pos is None:
            raise LexiconFormatError(f"lexicon line {lineno}: unknown part of speech {pos_name!r}")
        try:
            priority = int(prio_text)
        except ValueError:
            raise LexiconFormatError(f"lexicon line {lineno}: priority {prio_text!r} is not an integer") from None
        override: bool | None = None
        if len(fields) == 4:
            if fields[3] not in ("front", "back"):
                raise LexiconFormatError(f"lexicon line {lineno}: harmony override must be 'front' or 'back'")
            override = fields[3] == "front"
        try:
            entry = LexiconEntry(root=root, pos=pos, priority=priority, front_override=override)
        except LexiconFormatError as exc:
            raise LexiconFormatError(f"lexicon line {lineno}: {exc}") from None
        if (entry.root, entry.pos) in seen:
            raise LexiconFormatError(f"lexicon line {lineno}: duplicate entry {root!r}/{pos_name}")
        seen.add((entry.root, entry.pos))
        entries.append(entry)
    return entries


def parse_suffix_rules(text: str) -> list[SuffixRule]:
    """Parse suffix-rule file content: ``tag<TAB>archetype<TAB>slot``."""
    rules: list[SuffixRule] = []
    for lineno, line in _data_lines(text):
        fields = line.split("\t")
        if len(fields) != 3:
            raise LexiconFormatError(f"suffix rules line {lineno}: expected 3 tab-separated fields")
        tag = _TAG_BY_NAME.get(fields[0])
        if tag is None:
            raise LexiconFormatError(f"suffix rules line {lineno}: unknown tag {fields[0]!r}")
        try:
            slot = int(fields[2])
        except ValueError:
            raise LexiconFormatError(f"suffix rules line {lineno}: slot {fields[2]!r} is not an integer") from None
        try:
            rules.append(SuffixRule(tag=tag, archetype=fields[1], slot=slot))
        except InvalidArchetypeError as exc:
            raise LexiconFormatError(f"suffix rules line {lineno}: {exc}") from None
    return rules


def load_lexicon(path: str | Path) -> list[LexiconEntry]:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def load_suffix_rules(path: str | Path) -> list[SuffixRule]:
    return parse_suffix_rules(Path(path).read_text(encoding="utf-8"))


def _read_data(name: str) -> str:
    return resources.files("nonissue.data").joinpath(name).read_text(encoding="utf-8")


@functools.lru_cache(maxsize=1)
def default_analyzer() -> Analyzer:
    """Analyzer over the banking-domain lexicon and rule set shipped with the package."""
    return Analyzer(parse_lexicon(_read_data("lexicon.tsv")), parse_suffix_rules(_read_data("suffix_rules.tsv")))
