import os
import sys

# allow running the suite from a source checkout without installing
_src = os.path.join(os.path.dirname(__file__), os.pardir, "src")
try:
    import starweyl  # noqa: F401
except ImportError:
    sys.path.insert(0, os.path.abspath(_src))
