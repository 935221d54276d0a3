"""Commutator estimates on finite W*-algebras (direct sums of matrix blocks)."""

__version__ = "0.1.0"

from .algebra import *  # noqa: F401,F403
from .spectral import *  # noqa: F401,F403
from .norms import *  # noqa: F401,F403
from .central import *  # noqa: F401,F403
from .builder import *  # noqa: F401,F403
from .derivations import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
