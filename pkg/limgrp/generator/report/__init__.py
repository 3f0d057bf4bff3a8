"""
Markdown summary generator for grp presentations
Lists generators and relators with the invariants computable exactly
"""

import os

from textx import generator
from textxjinja import textx_jinja_generator

from limgrp.algebra.presentations import abelianization_quotient
from limgrp.algebra.search import forced_trivial
from limgrp.generator.util.file_util import create_output_file, model_base_name
from limgrp.language.parser import presentation_from_model
from limgrp.report.filters import get_filters

THIS_FOLDER = os.path.dirname(__file__)


@generator("grp", "report")
def grp_generate_report(metamodel, model, output_path, overwrite, debug, **custom_args):
    """Generator for a Markdown summary of a presentation"""
    context = get_context(model)
    output_path = create_output_file(output_path, "report")
    textx_jinja_generator(
        os.path.join(THIS_FOLDER, "template"),
        output_path,
        context,
        overwrite,
        filters=get_filters(),
    )


def get_context(model):
    """Template context for one presentation"""
    group = presentation_from_model(model)
    abelianization = abelianization_quotient(group)
    return {
        "presentation": model_base_name(model),
        "group": group,
        "abelianization": abelianization,
        "forced_trivial": [group.generators[i] for i in sorted(forced_trivial(group))],
    }
