"""Budget-constrained lambda-cent-dian network design.

The compiled extension lives inside the installed package; in a plain CMake
build tree it sits next to the library instead, so fall back to a top-level
import when the packaged one is absent (PYTHONPATH must then include both
this directory's parent and the extension's build directory).
"""

try:
    from ._centdian import *  # noqa: F401,F403
    from ._centdian import __doc__  # noqa: F401
except ImportError:
    from _centdian import *  # noqa: F401,F403
    from _centdian import __doc__  # noqa: F401
