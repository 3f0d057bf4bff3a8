"""
Textual languages of LimGrp

Words ("a b^2 a^-1") and group presentations ("< a, b | a b a^-1 b^-1 >"),
both parsed with textX.
"""

import os
from functools import lru_cache

from textx import language, metamodel_from_file

from .processors import semantic_check

THIS_FOLDER = os.path.dirname(__file__)


@lru_cache(maxsize=None)
def word_metamodel():
    """Metamodel for a single word"""
    return metamodel_from_file(os.path.join(THIS_FOLDER, "word.tx"), debug=False)


@lru_cache(maxsize=None)
def group_metamodel():
    """Metamodel for a presentation, with semantic checks registered"""
    metamodel = metamodel_from_file(os.path.join(THIS_FOLDER, "group.tx"), debug=False)
    metamodel.register_model_processor(semantic_check)
    return metamodel


@language("grp", "*.grp")
def grp_language():
    """Finite group presentations"""
    return group_metamodel()
