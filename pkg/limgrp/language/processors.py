"""
Semantic processors for the grp language
Run by textX after a presentation file has been parsed
"""

from textx import TextXSemanticError


def semantic_check(model, metamodel):
    """
    Main semantic check for a parsed presentation
    Called by textX after reference resolution
    """
    _validate_generators(model.generators)


def _validate_generators(generators):
    """Generator names must be unique"""
    names = set()
    for generator in generators:
        if generator.name in names:
            raise TextXSemanticError(f"Duplicate generator '{generator.name}' in presentation")
        names.add(generator.name)

