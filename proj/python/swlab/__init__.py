"""Strip wetting model laboratory: Python face of the C++ core."""

import os
import sys

try:
    from ._swlab import *  # noqa: F401,F403
    from ._swlab import __version__  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits in the CMake binary dir rather
    # than inside this package. The test harness points at it via env.
    _dir = os.environ.get("SWLAB_MODULE_DIR")
    if not _dir:
        raise
    if _dir not in sys.path:
        sys.path.insert(0, _dir)
    from _swlab import *  # noqa: F401,F403
    from _swlab import __version__  # noqa: F401
