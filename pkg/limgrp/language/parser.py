"""
Parsing of words and presentations

textX errors are re-raised as InputError so callers deal with a single
error vocabulary.
"""

import json
import logging
import os

from textx import TextXError

from limgrp.algebra.free_core import Alphabet, Word
from limgrp.algebra.presentations import Presentation
from limgrp.exceptions import InputError

from . import group_metamodel, word_metamodel

log = logging.getLogger(__name__)


def _exponent(power):
    return int(power.exponent) if power.exponent else 1


def word_tokens(text):
    """Generator names and exponents of a word, alphabet-free
    Example: "a b^-2" -> [("a", 1), ("b", -2)]
    """
    try:
        model = word_metamodel().model_from_str(text)
    except TextXError as e:
        raise InputError(f"Cannot parse word '{text}': {e.message}") from None
    return [(power.generator, _exponent(power)) for power in model.powers]


def parse_word(text, alphabet):
    """Parse a word over a known alphabet
    Example: parse_word("a b a^-1", Alphabet(("a", "b")))
    """
    if isinstance(text, Word):
        return text
    letters = []
    for name, exponent in word_tokens(text):
        letter = alphabet.letter(name)
        letters.extend([letter if exponent > 0 else -letter] * abs(exponent))
    return Word(alphabet, tuple(letters))


def infer_alphabet(texts):
    """Generators in order of first appearance"""
    names = []
    for text in texts:
        for name, _ in word_tokens(text):
            if name not in names:
                names.append(name)
    if not names:
        raise InputError("Cannot infer generators from trivial words")
    return Alphabet(tuple(names))


def parse_alphabet(names):
    if not names:
        raise InputError("At least one generator is required")
    return Alphabet(tuple(names))


def presentation_from_model(model):
    """Build a Presentation from a parsed grp model"""
    alphabet = Alphabet(tuple(generator.name for generator in model.generators))
    relators = []
    for relator in model.relators:
        letters = []
        for power in relator.powers:
            letter = alphabet.letter(power.generator.name)
            exponent = _exponent(power)
            letters.extend([letter if exponent > 0 else -letter] * abs(exponent))
        relators.append(Word(alphabet, tuple(letters)))
    return Presentation(alphabet, tuple(relators))


def parse_presentation(text):
    """Parse "< a, b | a b a^-1 b^-1 >" """
    try:
        model = group_metamodel().model_from_str(text)
    except TextXError as e:
        raise InputError(f"Cannot parse presentation: {e.message}") from None
    return presentation_from_model(model)


def load_presentation(path):
    """Read a presentation from a .grp or .json file"""
    from limgrp.language.codec import presentation_from_json

    if not os.path.exists(path):
        raise InputError(f"No such file: {path}")
    log.debug("Loading presentation from %s", path)
    if path.endswith(".grp"):
        try:
            model = group_metamodel().model_from_file(path)
        except TextXError as e:
            raise InputError(f"{path}: {e.message}") from None
        return presentation_from_model(model)
    return presentation_from_json(load_json(path))


def load_json(path):
    if not os.path.exists(path):
        raise InputError(f"No such file: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: invalid JSON ({e})") from None
