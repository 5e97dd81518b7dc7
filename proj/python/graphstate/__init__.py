from ._graphstate import *  # noqa: F401,F403
