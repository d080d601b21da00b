# Copyright 2021 National Technology & Engineering Solutions
# of Sandia, LLC (NTESS). Under the terms of Contract DE-NA0003525 with NTESS,
# the U.S. Government retains certain rights in this software.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# Sphinx configuration for the Folded documentation.

import folded

from sphinx.util import logging

log = logging.getLogger(__name__)

project = "Folded"
copyright = "2021, National Technology & Engineering Solutions of Sandia, LLC (NTESS)"
author = "The Folded developers"
release = folded.__version__
version = ".".join(release.split(".")[:2])

extensions = [
    "sphinxarg.ext",
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx_rtd_theme",
]

intersphinx_mapping = {
    "cvxpy": ("https://www.cvxpy.org", None),
    "drawsvg": ("https://cduck.github.io/drawsvg", None),
    "networkx": ("https://networkx.org/documentation/stable", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "python": ("https://docs.python.org/3", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    }

# Docstrings use numpy sections throughout.
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_rtype = False

autodoc_member_order = "bysource"
autodoc_typehints = "none"

# Surfaces, curves and points are documented by shape, not by class.
nitpicky = True
nitpick_ignore = [
    ("py:class", "array-like"),
    ("py:class", "callable"),
    ("py:class", "optional"),
    ("py:class", "surface"),
    ("py:class", "point"),
]

rst_epilog = """
.. |eps| replace:: :math:`\\varepsilon`
"""

master_doc = "index"
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

html_theme = "sphinx_rtd_theme"
html_title = f"Folded {release}"


def warn_undocumented_members(app, what, name, obj, options, lines):
    if not lines and not name.split(".")[-1].startswith("_"):
        log.warning(f"{what} {name} is undocumented")
        lines.append(f".. Warning:: {what} '{name}' undocumented")


def setup(app):
    app.connect("autodoc-process-docstring", warn_undocumented_members)
