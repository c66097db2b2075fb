"""Shipped English lexicon and nonsense-token generation."""

from __future__ import annotations

import functools
from importlib import resources

from capt.errors import GenerationError
from capt.rng import SplitMix64

_CONSONANTS = "bcdfghjklmnpqrstvwxz"
_VOWELS = "aeiou"

# Pronounceable-ish skeletons per token length (c = consonant, v = vowel).
_PATTERNS = {
    3: ("cvc", "vcv", "ccv", "vcc"),
    4: ("cvcv", "cvcc", "ccvc", "vcvc", "cvvc"),
    5: ("cvcvc", "cvccv", "ccvcv", "vccvc", "cvvcc"),
    6: ("cvcvcv", "cvccvc", "ccvcvc", "cvcvcc", "vccvcv"),
}


@functools.lru_cache(maxsize=1)
def english_words() -> frozenset[str]:
    """The shipped lexicon used to reject look-alike English tokens."""
    text = resources.files("capt.data").joinpath("lexicon_en.txt").read_text("utf-8")
    return frozenset(text.split())


def is_english(token: str) -> bool:
    return token.lower() in english_words()


def random_token(rng: SplitMix64, used: set[str] | None = None, max_tries: int = 1000) -> str:
    """A fresh 3-6 letter lowercase token that is not an English word."""
    used = used or set()
    lexicon = english_words()
    for _ in range(max_tries):
        length = rng.randint(3, 6)
        pattern = rng.choice(_PATTERNS[length])
        token = "".join(
            rng.choice(_VOWELS) if slot == "v" else rng.choice(_CONSONANTS)
            for slot in pattern
        )
        if token in lexicon or token in used:
            continue
        return token
    raise GenerationError("could not draw a fresh nonsense token")
