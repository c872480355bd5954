"""Fixed-width encodings for downstream learners.

Objects encode to 19 floats: one-hot color (8) | size (3) | shape (3) |
material (3) | position (2, scaled to [-1, 1] by the plane bound). Values
encode to their index in the canonical 33-token ordering.
"""

from __future__ import annotations

import numpy as np

from .scene import COLORS, MATERIALS, SHAPES, SIZES, ObjectState, PlaneConfig
from .transform import ALL_VALUES, TransformValue, VALUE_INDEX, value_token

OBJECT_ENCODING_DIM = 19
VALUE_ENCODING_DIM = 33


def encode_object(o: ObjectState, cfg: PlaneConfig) -> np.ndarray:
    vec = np.zeros(OBJECT_ENCODING_DIM, dtype=np.float64)
    vec[COLORS.index(o.color)] = 1.0
    vec[8 + SIZES.index(o.size)] = 1.0
    vec[11 + SHAPES.index(o.shape)] = 1.0
    vec[14 + MATERIALS.index(o.material)] = 1.0
    vec[17] = o.position.x / cfg.plane_bound
    vec[18] = o.position.y / cfg.plane_bound
    return vec


def encode_value(v: TransformValue) -> int:
    return VALUE_INDEX[value_token(v)]


def decode_value(index: int) -> TransformValue:
    if not 0 <= index < VALUE_ENCODING_DIM:
        raise ValueError(f"value index out of range: {index}")
    return ALL_VALUES[index]
