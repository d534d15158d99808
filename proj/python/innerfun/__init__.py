"""Inner function evaluation and sharp-invertibility diagnostics."""

from ._innerfun import *  # noqa: F401,F403
from ._innerfun import __version__  # noqa: F401
