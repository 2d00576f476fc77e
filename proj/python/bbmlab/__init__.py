"""Python bindings for the BBM/KdV spectral laboratory."""

from ._bbmlab import *  # noqa: F401,F403
from ._bbmlab import __version__  # noqa: F401
