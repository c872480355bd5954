"""The transformation space and its application function.

An atomic transformation changes one attribute of one object and is written
`(object_id, value_token)`. The 33 value tokens are, in canonical order:
3 sizes, 8 colors, 3 shapes, 3 materials, then 16 moves `move_<DIR>_<STEP>`
with directions N NE E SE S SW W NW (clockwise) and step 1 or 2. One step
moves the object by `step_unit` plane units along each displaced axis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels as K
from .errors import (
    MismatchedIdsError,
    NoOpChangeError,
    ObjectNotFoundError,
    OutOfPlaneError,
    OverlapViolationError,
    SequenceTooLongError,
    UnsolvableError,
)
from .scene import (
    COL_X,
    COL_Y,
    MATERIALS,
    COLORS,
    SHAPES,
    SIZES,
    Color,
    Material,
    PlaneConfig,
    SceneGraph,
    Shape,
    Size,
    array_to_scene,
    scene_to_array,
)


class Direction(str, enum.Enum):
    N = "N"
    NE = "NE"
    E = "E"
    SE = "SE"
    S = "S"
    SW = "SW"
    W = "W"
    NW = "NW"


DIRECTIONS = tuple(Direction)
DIRECTION_DELTA = {
    Direction.N: (0, 1),
    Direction.NE: (1, 1),
    Direction.E: (1, 0),
    Direction.SE: (1, -1),
    Direction.S: (0, -1),
    Direction.SW: (-1, -1),
    Direction.W: (-1, 0),
    Direction.NW: (-1, 1),
}


@dataclass(frozen=True)
class MoveValue:
    direction: Direction
    step: int

    def __post_init__(self):
        if self.step not in (1, 2):
            raise ValueError("step must be 1 or 2")

    @property
    def delta(self) -> tuple[int, int]:
        dx, dy = DIRECTION_DELTA[self.direction]
        return dx * self.step, dy * self.step


TransformValue = Union[Size, Color, Shape, Material, MoveValue]


class Attribute(str, enum.Enum):
    SIZE = "size"
    COLOR = "color"
    SHAPE = "shape"
    MATERIAL = "material"
    POSITION = "position"


class ApplyMode(str, enum.Enum):
    STRICT = "strict"
    LOOSE = "loose"


def _build_values() -> tuple[TransformValue, ...]:
    values: list[TransformValue] = []
    values.extend(SIZES)
    values.extend(COLORS)
    values.extend(SHAPES)
    values.extend(MATERIALS)
    for d in DIRECTIONS:
        for step in (1, 2):
            values.append(MoveValue(d, step))
    return tuple(values)


ALL_VALUES: tuple[TransformValue, ...] = _build_values()


def value_token(v: TransformValue) -> str:
    if isinstance(v, MoveValue):
        return f"move_{v.direction.value}_{v.step}"
    return v.value


VALUE_TOKENS: tuple[str, ...] = tuple(value_token(v) for v in ALL_VALUES)
VALUE_INDEX: dict[str, int] = {t: i for i, t in enumerate(VALUE_TOKENS)}
_VALUE_BY_TOKEN: dict[str, TransformValue] = dict(zip(VALUE_TOKENS, ALL_VALUES))

# First move token index in the canonical ordering.
FIRST_MOVE_INDEX = 17


def value_from_token(token: str) -> TransformValue:
    try:
        return _VALUE_BY_TOKEN[token]
    except KeyError:
        raise ValueError(f"unknown value token: {token!r}") from None


def attribute_of(v: TransformValue) -> Attribute:
    """Attribute implied by a value; total over the 33-value vocabulary."""
    if isinstance(v, Size):
        return Attribute.SIZE
    if isinstance(v, Color):
        return Attribute.COLOR
    if isinstance(v, Shape):
        return Attribute.SHAPE
    if isinstance(v, Material):
        return Attribute.MATERIAL
    if isinstance(v, MoveValue):
        return Attribute.POSITION
    raise TypeError(f"not a transform value: {v!r}")


@dataclass(frozen=True)
class AtomicTransformation:
    object_id: int
    value: TransformValue

    @property
    def token(self) -> str:
        return value_token(self.value)

    @property
    def attribute(self) -> Attribute:
        return attribute_of(self.value)


Transformation = Sequence[AtomicTransformation]


@dataclass(frozen=True)
class StepStatus:
    ok: bool
    error: str | None = None


_STATUS_ERROR = {
    K.STATUS_NOT_FOUND: "object_not_found",
    K.STATUS_NO_OP: "no_op",
    K.STATUS_OUT_OF_PLANE: "out_of_plane",
    K.STATUS_OVERLAP: "overlap_violation",
}

_STATUS_EXC = {
    K.STATUS_NOT_FOUND: ObjectNotFoundError,
    K.STATUS_NO_OP: NoOpChangeError,
    K.STATUS_OUT_OF_PLANE: OutOfPlaneError,
    K.STATUS_OVERLAP: OverlapViolationError,
}


def steps_to_array(T: Transformation) -> np.ndarray:
    arr = np.empty((len(T), 2), dtype=np.int32)
    for i, t in enumerate(T):
        arr[i, 0] = t.object_id
        arr[i, 1] = VALUE_INDEX[value_token(t.value)]
    return arr


def apply_atomic(s: SceneGraph, t: AtomicTransformation, mode: ApplyMode = ApplyMode.STRICT) -> SceneGraph:
    """Apply one atomic transformation, returning a new scene.

    Strict mode raises ObjectNotFoundError / NoOpChangeError / OutOfPlaneError /
    OverlapViolationError; loose mode enforces nothing except object existence.
    """
    arr = scene_to_array(s)
    statuses = np.zeros(1, dtype=np.int32)
    K.apply_steps(
        arr,
        steps_to_array([t]),
        mode is ApplyMode.STRICT,
        s.config.radii_array(),
        s.config.plane_bound,
        s.config.step_unit,
        statuses,
    )
    code = int(statuses[0])
    if code != K.STATUS_OK:
        raise _STATUS_EXC[code](f"step ({t.object_id}, {value_token(t.value)}) failed: {_STATUS_ERROR[code]}")
    return array_to_scene(arr, s.config)


def apply_sequence(
    s: SceneGraph, T: Transformation, mode: ApplyMode = ApplyMode.STRICT
) -> tuple[SceneGraph, tuple[StepStatus, ...]]:
    """Fold apply_atomic left to right; failed steps are skipped and recorded."""
    arr = scene_to_array(s)
    statuses = np.zeros(len(T), dtype=np.int32)
    if len(T):
        K.apply_steps(
            arr,
            steps_to_array(T),
            mode is ApplyMode.STRICT,
            s.config.radii_array(),
            s.config.plane_bound,
            s.config.step_unit,
            statuses,
        )
    out = tuple(
        StepStatus(ok=c == K.STATUS_OK, error=_STATUS_ERROR.get(int(c))) for c in statuses
    )
    return array_to_scene(arr, s.config), out


def is_order_sensitive(s: SceneGraph, T: Transformation, max_length: int = 4) -> bool:
    """True iff some permutation of T's atomics fails a step under strict application."""
    if len(T) > max_length:
        raise SequenceTooLongError(f"sequence of length {len(T)} exceeds permutation budget {max_length}")
    if len(T) <= 1:
        return False
    return bool(
        K.order_sensitive(
            scene_to_array(s),
            steps_to_array(T),
            s.config.radii_array(),
            s.config.plane_bound,
            s.config.step_unit,
        )
    )


def answer_space_size(object_count: int, value_count: int, max_len: int) -> int:
    """Sum over lengths 1..max_len of (value_count * object_count)^i, exactly."""
    if min(object_count, value_count, max_len) < 1:
        raise ValueError("all inputs must be >= 1")
    base = value_count * object_count
    return sum(base**i for i in range(1, max_len + 1))


def _visible_row(row, visible_bound: int) -> bool:
    return abs(int(row[COL_X])) <= visible_bound and abs(int(row[COL_Y])) <= visible_bound


_MOVE_BY_DELTA = {
    MoveValue(d, s).delta: MoveValue(d, s) for d in DIRECTIONS for s in (1, 2)
}


def _diff_slots(initial_arr, final_arr, cfg: PlaneConfig) -> list[tuple[int, list[int]]]:
    """Per-object diff atomics as (object_id, [candidate value indices]) slots."""
    slots: list[tuple[int, list[int]]] = []
    vb = cfg.visible_bound
    for i in range(len(initial_arr)):
        a = initial_arr[i]
        b = final_arr[i]
        vis_a = _visible_row(a, vb)
        vis_b = _visible_row(b, vb)
        if not vis_a and not vis_b:
            continue
        intrinsic: list[tuple[int, list[int]]] = []
        offsets = (0, 3, 11, 14)
        for attr in range(4):
            if a[attr] != b[attr]:
                intrinsic.append((i, [offsets[attr] + int(b[attr])]))
        move_slot = None
        if a[COL_X] != b[COL_X] or a[COL_Y] != b[COL_Y]:
            delta = (
                (int(b[COL_X]) - int(a[COL_X])) // cfg.step_unit,
                (int(b[COL_Y]) - int(a[COL_Y])) // cfg.step_unit,
            )
            exact = _MOVE_BY_DELTA.get(delta)
            if exact is not None and (
                int(a[COL_X]) + delta[0] * cfg.step_unit == int(b[COL_X])
                and int(a[COL_Y]) + delta[1] * cfg.step_unit == int(b[COL_Y])
            ):
                candidates = [VALUE_INDEX[value_token(exact)]]
            else:
                candidates = []
            if not vis_b:
                # Any move landing in the margin reconstructs a visibly equal state.
                for vi in range(FIRST_MOVE_INDEX, 33):
                    if vi in candidates:
                        continue
                    mv = ALL_VALUES[vi]
                    dx, dy = mv.delta
                    nx = int(a[COL_X]) + dx * cfg.step_unit
                    ny = int(a[COL_Y]) + dy * cfg.step_unit
                    if abs(nx) > cfg.plane_bound or abs(ny) > cfg.plane_bound:
                        continue
                    if abs(nx) <= vb and abs(ny) <= vb:
                        continue
                    candidates.append(vi)
            if not candidates:
                raise UnsolvableError(
                    f"object {i}: position change {tuple(a[4:6])} -> {tuple(b[4:6])} is not reachable by one move"
                )
            move_slot = (i, candidates)
        slots.extend(intrinsic)
        if move_slot is not None:
            slots.append(move_slot)
    return slots


def solve(initial: SceneGraph, final: SceneGraph, max_diffs: int = 8) -> tuple[AtomicTransformation, ...]:
    """Find a strict-applicable sequence reconstructing `final` from `initial`.

    Deterministic: diff atomics are ordered lowest-object-id-first and the
    backtracking explores orders and move alternatives in canonical order.
    """
    if len(initial) != len(final):
        raise MismatchedIdsError(f"object counts differ: {len(initial)} vs {len(final)}")
    if initial.config != final.config:
        raise ValueError("scenes use different plane configs")
    cfg = initial.config
    init_arr = scene_to_array(initial)
    final_arr = scene_to_array(final)
    slots = _diff_slots(init_arr, final_arr, cfg)
    if len(slots) > max_diffs:
        raise UnsolvableError(f"{len(slots)} differing attributes exceed the solver budget {max_diffs}")
    radii = cfg.radii_array()
    statuses = np.zeros(1, dtype=np.int32)
    step = np.zeros((1, 2), dtype=np.int32)

    chosen: list[tuple[int, int]] = []

    def backtrack(state, remaining: list[tuple[int, list[int]]]) -> bool:
        if not remaining:
            return True
        for si, (obj, candidates) in enumerate(remaining):
            for vi in candidates:
                nxt = state.copy()
                step[0, 0] = obj
                step[0, 1] = vi
                K.apply_steps(nxt, step, True, radii, cfg.plane_bound, cfg.step_unit, statuses)
                if int(statuses[0]) != K.STATUS_OK:
                    continue
                chosen.append((obj, vi))
                if backtrack(nxt, remaining[:si] + remaining[si + 1 :]):
                    return True
                chosen.pop()
        return False

    if not backtrack(init_arr.copy(), slots):
        raise UnsolvableError("no ordering of the diff atomics satisfies the constraints")
    result = tuple(AtomicTransformation(obj, ALL_VALUES[vi]) for obj, vi in chosen)
    reconstructed, st = apply_sequence(initial, result, ApplyMode.STRICT)
    assert all(s.ok for s in st)
    if K.scene_distance(scene_to_array(reconstructed), final_arr, cfg.visible_bound) != 0:
        raise UnsolvableError("diff atomics do not reconstruct the final state")
    return result


def transformation_from_tokens(pairs: Iterable[tuple[int, str]]) -> tuple[AtomicTransformation, ...]:
    """Build a transformation from (object_id, value_token) pairs."""
    return tuple(AtomicTransformation(int(o), value_from_token(t)) for o, t in pairs)
