"""Turkish orthography helpers: casing, vowel classes, final-consonant voicing."""
from __future__ import annotations

ALPHABET = frozenset("abcçdefgğhıijklmnoöprsştuüvyz")
VOWELS = frozenset("aeıioöuü")
FRONT_VOWELS = frozenset("eiöü")
ROUNDED_VOWELS = frozenset("oöuü")
# Finals that devoice a following D-archetype consonant (fıstıkçı şahap).
VOICELESS_FINALS = frozenset("fstkçşhp")

# str.lower() maps İ to "i" + combining dot and I to plain "i"; both are wrong
# for Turkish, so the dotted/dotless pairs are fixed up first.
_CASE_FIX = str.maketrans({"İ": "i", "I": "ı"})


def tr_lower(text: str) -> str:
    """Lowercase with Turkish dotted/dotless i handling."""
    return text.translate(_CASE_FIX).lower()


def is_turkish_letter(ch: str) -> bool:
    return ch in ALPHABET


def last_vowel(text: str) -> str | None:
    """Rightmost vowel of ``text``, or None if it has no vowel."""
    for ch in reversed(text):
        if ch in VOWELS:
            return ch
    return None
