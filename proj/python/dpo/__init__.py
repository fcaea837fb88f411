from ._dpo import *  # noqa: F401,F403
from ._dpo import __doc__  # noqa: F401
