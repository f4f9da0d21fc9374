"""moealab: a modular evolutionary multi-objective optimization platform.

Importing the package registers the bundled problems, operators, algorithms
and indicators; everything else is reached through :mod:`moealab.registry`.
"""

__version__ = "0.1.0"

from . import errors, registry  # noqa: F401
from . import variation  # noqa: F401  (registers EAreal, EAbinary, DE)
from . import problems  # noqa: F401  (registers ZDT/DTLZ suites)
from . import algorithms  # noqa: F401  (registers the five MOEAs)
from . import indicators  # noqa: F401  (registers performance indicators)
