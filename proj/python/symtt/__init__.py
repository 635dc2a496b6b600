from ._symtt import *  # noqa: F401,F403
from ._symtt import SymttError, MPS

__all__ = [name for name in dir() if not name.startswith("_")]
