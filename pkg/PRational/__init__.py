from PRational.core.dir import dirr
from PRational.core.git import git
from PRational.misc import seed

from .logging import LOGGER

from .platforms import *

Pari = PariAPI()
HELPABLE = {}


def boot() -> str:
    """Directories, seed and revision; returns the revision for report headers."""
    dirr()
    seed()
    return git()
