"""Closed-form PER approximations and cross-layer energy optimization."""

try:
    from linkopt._linkopt import *  # noqa: F401,F403
    from linkopt._linkopt import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension on PYTHONPATH directly
    from _linkopt import *  # noqa: F401,F403
    from _linkopt import __version__  # noqa: F401
