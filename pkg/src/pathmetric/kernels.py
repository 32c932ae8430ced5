"""Kernel selection: the compiled extension if it was built, else pure Python."""

from . import _kernels_py

try:
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _kernels_py
    BACKEND = "python"

pivot_tableau = _impl.pivot_tableau
cyclic_bfs = _impl.cyclic_bfs

__all__ = ["BACKEND", "pivot_tableau", "cyclic_bfs"]
