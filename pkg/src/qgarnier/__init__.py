"""Exact symbolic engine for quantum Garnier systems in two variables.

Subpackages: ``field`` (coefficient field), ``weyl`` (localized Weyl
algebra), ``parser`` (expression syntax), ``catalog`` (the seven Garnier
types as printed, plus errata), ``derive`` (the holomorphy-condition
pipeline), ``verify`` (exact checks), ``cli`` (command line).
"""

__version__ = "0.1.0"
