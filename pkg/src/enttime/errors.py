"""Exception taxonomy for the package.

Everything raised on purpose derives from :class:`EnttimeError`, so callers
can catch one base type. Shape problems, bad model definitions, bad state
data and numerical breakdowns stay distinguishable because the command line
front end maps them to different exit codes.
"""

from __future__ import annotations

__all__ = [
    "EnttimeError",
    "DimensionError",
    "StateError",
    "ModelError",
    "TruncationError",
    "NumericalError",
]


class EnttimeError(Exception):
    """Base class for all errors raised deliberately by this package."""


class DimensionError(EnttimeError, ValueError):
    """Array shapes or subsystem dimensions do not fit together."""


class StateError(EnttimeError, ValueError):
    """A vector or matrix fails a data requirement (norm, trace, finiteness)."""


class ModelError(EnttimeError, ValueError):
    """A physical model definition is inconsistent or unsupported."""


class TruncationError(ModelError):
    """A mode cutoff is too small for the requested state."""


class NumericalError(EnttimeError, RuntimeError):
    """A numerical routine lost accuracy beyond the configured tolerance."""
