#!/usr/bin/env python3

# Configuration file for the Sphinx documentation builder.

import sys
import os
import pathlib

sys.path.insert(0, os.path.abspath("../"))

autodoc_default_options = {
    "special-members": "__init__",
    "undoc-members": True,
    "show-inheritance": True,
}
autodoc_inherit_docstrings = False
autoclass_content = "class"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.todo",
    "sphinx.ext.coverage",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "pandas": ("https://pandas.pydata.org/docs/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "cvxpy": ("https://www.cvxpy.org/", None),
}

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "widesense"
copyright = "2026, The widesense developers"
author = "The widesense developers"

this_dir = pathlib.Path(__file__).resolve().parent
with (this_dir / ".." / "widesense" / "version.txt").open() as vf:
    version = vf.read().strip()
print("Version as read from version.txt: '{}'".format(version))
release = version

language = "en"
exclude_patterns = ["_build"]
pygments_style = "sphinx"
todo_include_todos = True

try:
    import importlib

    importlib.import_module("sphinx_book_theme")
    html_theme = "sphinx_book_theme"
except ImportError:
    html_theme = "default"
print("html_theme='{}'".format(html_theme))

html_theme_options = {}
htmlhelp_basename = "widesenseDoc"

latex_documents = [
    (master_doc, "widesense.tex", "widesense", author, "manual")
]
man_pages = [(master_doc, "widesense", "widesense", [author], 1)]

autodoc_member_order = "bysource"
