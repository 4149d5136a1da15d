#!/usr/bin/env python
#
# varord documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

import varord  # noqa: E402

# -- General configuration ---------------------------------------------

extensions = ["sphinx.ext.autodoc", "sphinx.ext.viewcode"]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

# General information about the project.
project = "varord"
copyright = "2022, varord developers"
author = "varord developers"

version = varord.__version__
release = varord.__version__

language = None
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"
todo_include_todos = False

# -- Options for HTML output -------------------------------------------

html_theme = "alabaster"
html_static_path = ["_static"]
htmlhelp_basename = "varorddoc"

# -- Options for manual page output ------------------------------------

man_pages = [(master_doc, "varord", "varord Documentation", [author], 1)]
