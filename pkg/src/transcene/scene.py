"""Scene-graph state space: attribute vocabularies, plane geometry, validity.

A scene is an ordered set of objects on a bounded integer plane. The plane is
split into a centered visible square and the surrounding invisible margin;
objects in the margin exist in the scene graph but are unobservable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class Size(str, enum.Enum):
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"


class Color(str, enum.Enum):
    GRAY = "gray"
    RED = "red"
    BLUE = "blue"
    GREEN = "green"
    BROWN = "brown"
    PURPLE = "purple"
    CYAN = "cyan"
    YELLOW = "yellow"


class Shape(str, enum.Enum):
    CUBE = "cube"
    SPHERE = "sphere"
    CYLINDER = "cylinder"


class Material(str, enum.Enum):
    RUBBER = "rubber"
    METAL = "metal"
    GLASS = "glass"


SIZES = tuple(Size)
COLORS = tuple(Color)
SHAPES = tuple(Shape)
MATERIALS = tuple(Material)

_SIZE_INDEX = {s: i for i, s in enumerate(SIZES)}
_COLOR_INDEX = {c: i for i, c in enumerate(COLORS)}
_SHAPE_INDEX = {s: i for i, s in enumerate(SHAPES)}
_MATERIAL_INDEX = {m: i for i, m in enumerate(MATERIALS)}

# Array columns used by the kernels.
COL_SIZE, COL_COLOR, COL_SHAPE, COL_MATERIAL, COL_X, COL_Y = range(6)


@dataclass(frozen=True)
class Position:
    x: int
    y: int


@dataclass(frozen=True)
class PlaneConfig:
    """Geometry of the plane; serialized with every dataset manifest."""

    plane_bound: int = 40
    visible_bound: int = 20
    collision_radius: tuple[float, float, float] = (3.0, 4.5, 6.0)  # small, medium, large
    step_unit: int = 10

    def __post_init__(self):
        if not 0 < self.visible_bound < self.plane_bound:
            raise ValueError("require 0 < visible_bound < plane_bound")
        r = self.collision_radius
        if not (0 < r[0] < r[1] < r[2]):
            raise ValueError("collision radii must be positive and increasing with size")
        if 2 * r[2] >= self.visible_bound:
            raise ValueError("visible area must be able to hold multiple objects")
        if self.step_unit <= 0:
            raise ValueError("step_unit must be positive")

    def radius(self, size: Size) -> float:
        return self.collision_radius[_SIZE_INDEX[size]]

    def radii_array(self) -> np.ndarray:
        return np.asarray(self.collision_radius, dtype=np.float64)

    def to_dict(self) -> dict:
        return {
            "plane_bound": self.plane_bound,
            "visible_bound": self.visible_bound,
            "collision_radius": {s.value: r for s, r in zip(SIZES, self.collision_radius)},
            "step_unit": self.step_unit,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlaneConfig":
        radius = d["collision_radius"]
        return cls(
            plane_bound=int(d["plane_bound"]),
            visible_bound=int(d["visible_bound"]),
            collision_radius=tuple(float(radius[s.value]) for s in SIZES),
            step_unit=int(d["step_unit"]),
        )


@dataclass(frozen=True)
class ObjectState:
    id: int
    size: Size
    color: Color
    shape: Shape
    material: Material
    position: Position


@dataclass(frozen=True)
class SceneGraph:
    """Immutable ordered set of objects; objects[i].id == i."""

    objects: tuple[ObjectState, ...]
    config: PlaneConfig = field(default_factory=PlaneConfig)

    def __post_init__(self):
        for i, o in enumerate(self.objects):
            if o.id != i:
                raise ValueError(f"object ids must be 0..n-1 in order, got id {o.id} at index {i}")

    def __len__(self) -> int:
        return len(self.objects)


def is_visible(p: Position, cfg: PlaneConfig) -> bool:
    """True iff `p` lies in the centered visible square (closed boundary)."""
    return abs(p.x) <= cfg.visible_bound and abs(p.y) <= cfg.visible_bound


def collides(a: ObjectState, b: ObjectState, cfg: PlaneConfig) -> bool:
    """True iff the discs of `a` and `b` overlap (strict inequality: touching is fine)."""
    dx = a.position.x - b.position.x
    dy = a.position.y - b.position.y
    limit = cfg.radius(a.size) + cfg.radius(b.size)
    return dx * dx + dy * dy < limit * limit


@dataclass(frozen=True)
class ValidityReport:
    colliding_pairs: tuple[tuple[int, int], ...]
    out_of_plane: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return not self.colliding_pairs and not self.out_of_plane


def scene_valid(s: SceneGraph) -> ValidityReport:
    """Report every colliding pair and every out-of-plane object."""
    cfg = s.config
    oob = tuple(
        o.id
        for o in s.objects
        if abs(o.position.x) > cfg.plane_bound or abs(o.position.y) > cfg.plane_bound
    )
    pairs = []
    objs = s.objects
    for i in range(len(objs)):
        for j in range(i + 1, len(objs)):
            if collides(objs[i], objs[j], cfg):
                pairs.append((i, j))
    return ValidityReport(colliding_pairs=tuple(pairs), out_of_plane=oob)


def scene_to_array(s: SceneGraph) -> np.ndarray:
    """Kernel representation: int32 (n, 6) with columns size, color, shape, material, x, y."""
    arr = np.empty((len(s.objects), 6), dtype=np.int32)
    for i, o in enumerate(s.objects):
        arr[i, COL_SIZE] = _SIZE_INDEX[o.size]
        arr[i, COL_COLOR] = _COLOR_INDEX[o.color]
        arr[i, COL_SHAPE] = _SHAPE_INDEX[o.shape]
        arr[i, COL_MATERIAL] = _MATERIAL_INDEX[o.material]
        arr[i, COL_X] = o.position.x
        arr[i, COL_Y] = o.position.y
    return arr


def array_to_scene(arr: np.ndarray, cfg: PlaneConfig) -> SceneGraph:
    objects = tuple(
        ObjectState(
            id=i,
            size=SIZES[int(row[COL_SIZE])],
            color=COLORS[int(row[COL_COLOR])],
            shape=SHAPES[int(row[COL_SHAPE])],
            material=MATERIALS[int(row[COL_MATERIAL])],
            position=Position(int(row[COL_X]), int(row[COL_Y])),
        )
        for i, row in enumerate(arr)
    )
    return SceneGraph(objects=objects, config=cfg)
