"""Hot chain kernels.

The compiled extension is used when it was built; otherwise the
pure-Python module takes over. ``TAUTRIG_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("TAUTRIG_PURE_PYTHON") == "1":
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

DEFAULT = "compiled" if _ckernels is not None else "python"


def get(name=None):
    if name is None:
        name = DEFAULT
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
