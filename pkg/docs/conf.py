# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.

# -- Path setup --------------------------------------------------------------

import os
import sys
import time

# modules that import these are documented without installing them
autodoc_mock_imports = [
    "PySignal",
    "lmfit",
    "scipy",
]

sys.path.insert(0, os.path.abspath(".."))


# -- Project information -----------------------------------------------------


def get_metadata(relpath, varname):
    """Read metadata info from a file without importing it."""
    from os.path import dirname, join

    if "__file__" not in globals():
        root = ".."
    else:
        root = dirname(__file__)

    for line in open(join(root, relpath), "rb"):
        line = line.decode("utf-8")
        if varname in line:
            if '"' in line:
                return line.split('"')[1]
            elif "'" in line:
                return line.split("'")[1]


project = "setpsnr"
copyright = "{}, setpsnr developers".format(time.localtime().tm_year)
author = "setpsnr developers"

# The short X.Y version
version = get_metadata("../setpsnr/__init__.py", "__version__")
# The full version, including alpha/beta/rc tags
release = version


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "m2r2",
]

templates_path = ["_templates"]
source_suffix = [".rst", ".md"]
master_doc = "index"
language = None
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = None

autodoc_member_order = "bysource"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
}


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
htmlhelp_basename = "setpsnrdoc"


# -- Options for LaTeX output ------------------------------------------------

latex_documents = [
    (master_doc, "setpsnr.tex", "setpsnr Documentation", author, "manual"),
]


# -- Options for manual page output ------------------------------------------

man_pages = [(master_doc, "setpsnr", "setpsnr Documentation", [author], 1)]
