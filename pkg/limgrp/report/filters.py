"""
Jinja2 filters for text reports
Shared by the CLI text output and the grp report generator
"""

import sys

from limgrp.algebra.free_core import Word
from limgrp.algebra.status import Status
from limgrp.settings import color_enabled

STATUS_COLORS = {
    "verified": "32",
    "sampled": "33",
    "asserted": "33",
    "unverifiable": "35",
    "refuted": "31",
    "failed": "31",
}


def format_status(status, stream=None):
    """Status word, coloured when the output stream allows it
    Example: verified -> \x1b[32mverified\x1b[0m
    """
    text = status.value if isinstance(status, Status) else str(status)
    code = STATUS_COLORS.get(text)
    if code and color_enabled(stream or sys.stdout):
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def format_vector(vector):
    """Example: (1, 0, -2) -> (1, 0, -2)"""
    return "(" + ", ".join(str(int(x)) for x in vector) + ")"


def format_matrix(rows):
    """Right-aligned rows of an integer matrix"""
    rows = [[str(int(x)) for x in row] for row in rows]
    if not rows or not rows[0]:
        return "[]"
    width = max(len(x) for row in rows for x in row)
    return "\n".join("[ " + " ".join(x.rjust(width) for x in row) + " ]" for row in rows)


def format_value(value):
    """Words in word syntax, vectors in parentheses, everything else as str"""
    if isinstance(value, Word):
        return str(value)
    if isinstance(value, Status):
        return format_status(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)) and value and all(isinstance(x, int) for x in value):
        return format_vector(value)
    return str(value)


def is_nested(value):
    return isinstance(value, dict) or (
        isinstance(value, (list, tuple))
        and not all(isinstance(x, (int, str, bool)) or x is None for x in value)
    )


def get_tests():
    return {"nested": is_nested}


def get_filters():
    return {
        "format_status": format_status,
        "format_vector": format_vector,
        "format_matrix": format_matrix,
        "format_value": format_value,
    }
