# -*- coding: utf-8 -*-
"""Sphinx configuration file."""
# pylint: disable=wrong-import-position,invalid-name
import sys
import os
sys.path.insert(0, os.path.abspath('.'))
from write_configfile import write_configfile  # noqa

# The package is documented from the source tree
sys.path.insert(0, os.path.abspath('..'))
from specedge._version import get_versions  # NOQA
__version__ = get_versions()['version']

# -- Project information -----------------------------------------------------

project = 'specedge'
copyright = '2024, The specedge developers'  # pylint: disable=redefined-builtin
author = 'The specedge developers'
# The full version, including alpha/beta/rc tags.
release = __version__
# The short X.Y version.
version = release.split('-')[0]

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosectionlabel',
    'sphinx.ext.intersphinx',
    'sphinx_rtd_theme',
    'sphinxcontrib.katex',
    'sphinx_mdinclude',
]

latex_macros = r"""
    \def \op                {\mathrm{op}}
    \def \tr                {\operatorname{tr}}
"""

# Translate LaTeX macros to KaTeX and add to options for HTML builder
import sphinxcontrib.katex as katex  # noqa
katex_macros = katex.latex_defs_to_katex_macros(latex_macros)
katex_options = 'macros: {' + katex_macros + '}'

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

intersphinx_mapping = {
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'


def setup(app):
    """Add custom functions to Sphinx."""
    app.connect('builder-inited', write_configfile)
