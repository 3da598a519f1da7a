# Sphinx configuration of the rinehart documentation.

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from rinehart import __version__  # noqa: E402

project = "rinehart"
author = "rinehart developers"
copyright = f"2025, {author}"
release = version = __version__

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "myst_parser",
    "sphinx_click",
]
myst_enable_extensions = ["deflist", "dollarmath", "linkify"]
source_suffix = {".md": "markdown"}
root_doc = "index"
exclude_patterns = ["build"]

# Docstrings are Google style with ``Args``/``Returns``/``Raises`` sections.
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_attr_annotations = True

autodoc_member_order = "bysource"
autodoc_typehints = "description"
autodoc_default_options = {"exclude-members": "model_config, model_fields"}

html_theme = "sphinxawesome_theme"
html_title = f"rinehart {release}"
html_theme_options = {
    "main_nav_links": {"CLI": "/cli/", "API": "/api/"},
}
