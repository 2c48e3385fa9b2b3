"""Kernel backend selection.

The compiled Cython backend is preferred when its extension module built;
otherwise (or when STARWEYL_PURE is set in the environment) the pure-Python
twin is used. Both expose the same three functions; see pure.py for the
normative semantics.
"""

import os

from . import pure

if os.environ.get("STARWEYL_PURE"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _ckern as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

mul_terms = _impl.mul_terms
p_lambda_terms = _impl.p_lambda_terms
star_terms = _impl.star_terms

__all__ = ["BACKEND", "mul_terms", "p_lambda_terms", "star_terms", "pure"]
