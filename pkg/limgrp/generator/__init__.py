"""
textX generators for the grp language

    textx generate surface2.grp --target json
    textx generate surface2.grp --target report -o out/
"""

import json
import logging
import os

from textx import generator

from limgrp.generator.util.file_util import output_file_name
from limgrp.language.codec import presentation_to_json
from limgrp.language.parser import presentation_from_model

log = logging.getLogger(__name__)


@generator("grp", "json")
def grp_generate_json(metamodel, model, output_path, overwrite, debug, **custom_args):
    """Write a presentation as JSON"""
    target = output_file_name(model, output_path, ".json")
    if os.path.exists(target) and not overwrite:
        log.warning("Skipping %s: file exists (use --overwrite)", target)
        return
    with open(target, "w", encoding="utf-8") as f:
        json.dump(presentation_to_json(presentation_from_model(model)), f, indent=2)
        f.write("\n")
