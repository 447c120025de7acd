"""S-curve models from singularly perturbed lines.

The heavy lifting lives in the compiled ``_samcurve`` extension; this package
re-exports its public surface.
"""

try:
    from ._samcurve import *  # noqa: F401,F403  (installed wheel layout)
    from ._samcurve import __doc__ as _doc
except ImportError:  # in-tree build: extension sits next to the package dir
    from _samcurve import *  # noqa: F401,F403
    from _samcurve import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
