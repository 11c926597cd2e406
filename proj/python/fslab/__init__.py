from ._core import *  # noqa: F401,F403
from ._core import ConfigError, DivergenceError, InvalidArgument, Error

__version__ = "0.1.0"
