from ._clcst import *  # noqa: F401,F403
