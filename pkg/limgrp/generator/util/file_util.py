"""
File utility functions for grp generators
Handles output directory creation and path management
"""

import os


def create_output_file(output_path, generated_folder_name):
    """Create output directory for generated files"""
    if output_path is None:
        output_path = os.getcwd()
    output_path = os.path.join(output_path, generated_folder_name, "")
    if not os.path.exists(output_path):
        os.makedirs(output_path, exist_ok=True)
    return output_path


def model_base_name(model):
    """Example: /tmp/surface2.grp -> surface2"""
    return os.path.splitext(os.path.basename(model._tx_filename))[0]


def output_file_name(model, output_path, extension):
    """Generated file next to the model unless an output folder is given"""
    folder = output_path or os.path.dirname(os.path.abspath(model._tx_filename))
    os.makedirs(folder, exist_ok=True)
    return os.path.join(folder, model_base_name(model) + extension)
