"""Zak transforms, Zibulski-Zeevi frame bounds and Hermite series identities."""

try:
    from ._zakframe import *  # noqa: F401,F403  (installed package layout)
    from ._zakframe import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension on PYTHONPATH
    from _zakframe import *  # noqa: F401,F403
    from _zakframe import __version__  # noqa: F401
