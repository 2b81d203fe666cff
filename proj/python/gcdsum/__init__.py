"""gcd-sum weighted average verification toolkit.

The compiled extension carries the implementation; this package re-exports
it.  When running against a build tree, point GCDSUM_EXT_DIR at the
directory containing the compiled ``_core`` module.
"""

import os
import sys

_ext_dir = os.environ.get("GCDSUM_EXT_DIR")
if _ext_dir and _ext_dir not in sys.path:
    sys.path.insert(0, _ext_dir)

try:
    from gcdsum._core import *  # noqa: F401,F403
    from gcdsum._core import __version__  # noqa: F401
except ImportError:
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
