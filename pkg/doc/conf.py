# -*- coding: utf-8 -*-
#
# legendrian documentation build configuration file.

import os, sys

sys.path.insert(0, os.path.abspath(".."))

extensions = ["sphinx.ext.autodoc", "sphinx.ext.mathjax"]

templates_path = ["_templates"]
source_suffix = ".txt"
master_doc = "index"

project = u"legendrian"
copyright = u"2017, The legendrian developers"

# The short X.Y version.
version = "0.1"
# The full version, including alpha/beta/rc tags.
release = "0.1.0"

exclude_patterns = ["_build"]
pygments_style = "sphinx"

html_theme = "default"
html_static_path = []
htmlhelp_basename = "legendriandoc"

latex_documents = [
  ("index", "legendrian.tex", u"legendrian Documentation",
   u"The legendrian developers", "manual"),
]

man_pages = [
    ("index", "legendrian", u"legendrian Documentation",
     [u"The legendrian developers"], 1)
]
