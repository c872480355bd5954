"""Kernel backend selection: compiled extension when available, pure Python otherwise.

Set TRANSCENE_PURE_PYTHON=1 to force the fallback (used by tests and the
kernel benchmark).
"""

import os

from . import _core_py

if os.environ.get("TRANSCENE_PURE_PYTHON"):
    _backend = _core_py
    COMPILED = False
else:
    try:
        from . import _core as _backend  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        _backend = _core_py
        COMPILED = False

BACKEND_NAME = "compiled" if COMPILED else "pure-python"

STATUS_OK = _core_py.STATUS_OK
STATUS_NOT_FOUND = _core_py.STATUS_NOT_FOUND
STATUS_NO_OP = _core_py.STATUS_NO_OP
STATUS_OUT_OF_PLANE = _core_py.STATUS_OUT_OF_PLANE
STATUS_OVERLAP = _core_py.STATUS_OVERLAP

MOVE_BLOCKED = _core_py.MOVE_BLOCKED
MOVE_INSIDE = _core_py.MOVE_INSIDE
MOVE_OUT = _core_py.MOVE_OUT
MOVE_IN = _core_py.MOVE_IN
MOVE_HIDDEN = _core_py.MOVE_HIDDEN

apply_steps = _backend.apply_steps
scene_distance = _backend.scene_distance
collision_at = _backend.collision_at
order_sensitive = _backend.order_sensitive
move_class = _backend.move_class
