"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``RANKONE_PURE=1`` to force the numpy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("RANKONE_PURE") != "1":
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _kernels_py

dimino_extend = _impl.dimino_extend
normalizing_mask = _impl.normalizing_mask
conjugation_labels = _impl.conjugation_labels

__all__ = ["BACKEND", "dimino_extend", "normalizing_mask", "conjugation_labels"]
