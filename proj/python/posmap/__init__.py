"""Numerics for linear maps on M_d: representations, positivity, spectra,
state classes and witnesses."""

try:
    from ._posmap import *  # noqa: F401,F403
    from ._posmap import LinearMap, Error  # noqa: F401
except ImportError:  # running against a build tree where _posmap is top-level
    from _posmap import *  # noqa: F401,F403
    from _posmap import LinearMap, Error  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
