"""
Text rendering of command results

Results are plain dicts (the same ones printed as JSON) rendered through
Jinja2 templates in report/templates.
"""

from functools import lru_cache

from jinja2 import Environment, PackageLoader, StrictUndefined

from .filters import get_filters, get_tests


@lru_cache(maxsize=None)
def environment():
    env = Environment(
        loader=PackageLoader("limgrp.report", "templates"),
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
        undefined=StrictUndefined,
    )
    env.filters.update(get_filters())
    env.tests.update(get_tests())
    return env


def render(template, payload):
    """Render a payload dict with a named template (default: generic listing)"""
    name = f"{template or 'payload'}.txt.jinja"
    return environment().get_template(name).render(payload=payload)
