"""Hot arithmetic kernels: GF(p^d) multiplication and GF(p) rank.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``MIXEDQUIVER_PURE=1``
forces the Python fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("MIXEDQUIVER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

gf_add = _impl.gf_add
gf_sub = _impl.gf_sub
gf_neg = _impl.gf_neg
gf_mul = _impl.gf_mul
gf_pow = _impl.gf_pow
rank_mod_p = _impl.rank_mod_p
unpack = _pykernels.unpack
pack = _pykernels.pack

__all__ = [
    "BACKEND", "gf_add", "gf_sub", "gf_neg", "gf_mul", "gf_pow",
    "rank_mod_p", "unpack", "pack",
]
