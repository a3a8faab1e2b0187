"""Backend selection for the label rewriting kernel.

The compiled extension is used when it imports; setting the environment
variable ``DFLOORPLAN_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

from . import _kernel_py

BACKEND = "python"
rewrite_key = _kernel_py.rewrite_key
expand_key = _kernel_py.expand_key
expand_frontier = _kernel_py.expand_frontier

if os.environ.get("DFLOORPLAN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _labelkernel
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        rewrite_key = _labelkernel.rewrite_key
        expand_key = _labelkernel.expand_key
        expand_frontier = _labelkernel.expand_frontier

__all__ = ["BACKEND", "rewrite_key", "expand_key", "expand_frontier"]
