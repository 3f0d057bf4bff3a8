"""
Package-wide defaults

Per-invocation values come from CLI flags; the environment only controls
colouring of text output.
"""

import os

# Published seed for every randomized helper and property sample.
DEFAULT_SEED = 20080625

DEFAULT_TARGET_RANK = 2
DEFAULT_MAX_IMAGE_LENGTH = 8
DEFAULT_STABLE_RANGE = (0, 10)
DEFAULT_SAMPLING_RADIUS = 3
DEFAULT_SHORTEN_DEPTH = 2
DEFAULT_SEARCH_DEPTH = 8

# Exhaustive Whitehead enumeration grows like 4^(rank - 1) per multiplier.
WHITEHEAD_RANK_ENVELOPE = 6

COLOR_ENV = "LIMGRP_COLOR"


def color_enabled(stream):
    """Decide whether status words written to `stream` get ANSI colours"""
    if os.environ.get("NO_COLOR"):
        return False
    mode = os.environ.get(COLOR_ENV, "auto").lower()
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()
