"""Bias-balanced sample generation.

Every categorical choice runs through a count table: an option's sampling
weight is `n_max - n_i + t`, so under-drawn options are strongly preferred
and long-run counts equalize. Scene factors (visible-object count, the four
intrinsic attributes) and the transformation length use the tables directly.
Atomic transformations are drawn value-token-first from the n-gram tables,
then an object is drawn among the objects that can legally take that value,
weighted by the object-id table and, for moves, the move-type table. Counts
for a step are committed only once the step is accepted, so the tables track
the emitted data exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .errors import PlacementFailureError, SamplingFailureError
from .scene import (
    COL_X,
    COL_Y,
    COLORS,
    MATERIALS,
    SHAPES,
    SIZES,
    PlaneConfig,
    SceneGraph,
    array_to_scene,
    scene_to_array,
)
from .transform import (
    ALL_VALUES,
    FIRST_MOVE_INDEX,
    ApplyMode,
    AtomicTransformation,
    VALUE_TOKENS,
    apply_sequence,
)

SETTINGS = ("basic", "event", "view")
VIEWS = ("left", "center", "right")
MOVE_TYPES = ("in", "out", "inside")

_CLASS_TO_TYPE = {K.MOVE_INSIDE: "inside", K.MOVE_OUT: "out", K.MOVE_IN: "in"}

# Plane-unit displacement per move token (canonical order: direction, then step).
_MOVE_VECTORS = tuple(
    (v.delta[0], v.delta[1]) for v in ALL_VALUES[FIRST_MOVE_INDEX:]
)


class CountTable:
    """Occurrence counts for one balanced factor; counts only increase."""

    def __init__(self, name: str, options):
        self.name = name
        self.options = tuple(options)
        self.counts = {o: 0 for o in self.options}

    def count(self, key) -> int:
        return self.counts.get(key, 0)

    def increment(self, key) -> None:
        self.counts[key] = self.counts.get(key, 0) + 1

    def snapshot(self) -> dict:
        return dict(self.counts)


def balance_weights(options, table: CountTable, t: float) -> list[float]:
    """Algorithm weights c_i = n_max - n_i + t over the given option subset."""
    counts = [table.count(o) for o in options]
    n_max = max(counts)
    return [n_max - c + t for c in counts]


def _weighted_choice(rng: random.Random, options, weights):
    total = sum(weights)
    r = rng.random() * total
    acc = 0.0
    for o, w in zip(options, weights):
        acc += w
        if r < acc:
            return o
    return options[-1]


def balanced_sample(options, counts: CountTable, t: float, rng: random.Random):
    """Draw one option with probability (n_max - n_i + t) / sum and count it."""
    if not options:
        raise ValueError("options must be non-empty")
    choice = _weighted_choice(rng, tuple(options), balance_weights(options, counts, t))
    counts.increment(choice)
    return choice


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    setting: str = "event"
    objects_per_scene: int = 10
    visible_count_range: tuple[int, int] = (3, 8)
    lengths: tuple[int, ...] = (1, 2, 3, 4)
    tolerance: float = 0.1
    ngram_orders: tuple[int, ...] = (1, 2)
    split_sizes: tuple[tuple[str, int], ...] = (("main", 1000),)
    plane: PlaneConfig = field(default_factory=PlaneConfig)
    max_place_retries: int = 100
    max_draw_retries: int = 100

    def __post_init__(self):
        if self.setting not in SETTINGS:
            raise ValueError(f"unknown setting {self.setting!r}")
        lo, hi = self.visible_count_range
        if not 1 <= lo <= hi <= self.objects_per_scene:
            raise ValueError("visible_count_range must lie within [1, objects_per_scene]")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if not self.lengths or any(n < 1 for n in self.lengths):
            raise ValueError("lengths must be positive")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "setting": self.setting,
            "objects_per_scene": self.objects_per_scene,
            "visible_count_range": list(self.visible_count_range),
            "lengths": list(self.lengths),
            "tolerance": self.tolerance,
            "ngram_orders": list(self.ngram_orders),
            "split_sizes": [[name, size] for name, size in self.split_sizes],
            "plane": self.plane.to_dict(),
            "max_place_retries": self.max_place_retries,
            "max_draw_retries": self.max_draw_retries,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorConfig":
        return cls(
            seed=int(d["seed"]),
            setting=d["setting"],
            objects_per_scene=int(d["objects_per_scene"]),
            visible_count_range=tuple(d["visible_count_range"]),
            lengths=tuple(d["lengths"]),
            tolerance=float(d["tolerance"]),
            ngram_orders=tuple(d["ngram_orders"]),
            split_sizes=tuple((name, int(size)) for name, size in d["split_sizes"]),
            plane=PlaneConfig.from_dict(d["plane"]),
            max_place_retries=int(d["max_place_retries"]),
            max_draw_retries=int(d["max_draw_retries"]),
        )


class BalanceTables:
    """All count tables driving one generation run."""

    def __init__(self, cfg: GeneratorConfig):
        lo, hi = cfg.visible_count_range
        self.visible_count = CountTable("visible_object_count", range(lo, hi + 1))
        self.size = CountTable("size", SIZES)
        self.color = CountTable("color", COLORS)
        self.shape = CountTable("shape", SHAPES)
        self.material = CountTable("material", MATERIALS)
        self.length = CountTable("transformation_length", cfg.lengths)
        self.object_id = CountTable("object_id", range(cfg.objects_per_scene))
        self.value = CountTable("value_1gram", VALUE_TOKENS)
        self.value_pairs: dict[str, CountTable] = {}
        self.move_type = CountTable("move_type", MOVE_TYPES)

    def pair_row(self, prev: str) -> CountTable:
        row = self.value_pairs.get(prev)
        if row is None:
            row = CountTable(f"value_2gram[{prev}]", VALUE_TOKENS)
            self.value_pairs[prev] = row
        return row


@dataclass(frozen=True)
class Sample:
    id: str
    setting: str
    initial: SceneGraph
    final: SceneGraph
    reference: tuple[AtomicTransformation, ...]
    view: str = "center"
    split: str = "main"


def sample_scene(cfg: GeneratorConfig, tables: BalanceTables, rng: random.Random) -> SceneGraph:
    """Place objects_per_scene objects: the drawn visible count inside the
    visible square, the rest in the margin, rejection-sampled until collision-free."""
    t = cfg.tolerance
    plane = cfg.plane
    n = cfg.objects_per_scene
    lo, hi = cfg.visible_count_range
    n_visible = balanced_sample(range(lo, hi + 1), tables.visible_count, t, rng)

    arr = np.zeros((n, 6), dtype=np.int32)
    radii = plane.radii_array()
    vb, pb = plane.visible_bound, plane.plane_bound
    for i in range(n):
        arr[i, 0] = SIZES.index(balanced_sample(SIZES, tables.size, t, rng))
        arr[i, 1] = COLORS.index(balanced_sample(COLORS, tables.color, t, rng))
        arr[i, 2] = SHAPES.index(balanced_sample(SHAPES, tables.shape, t, rng))
        arr[i, 3] = MATERIALS.index(balanced_sample(MATERIALS, tables.material, t, rng))
        radius = float(radii[arr[i, 0]])
        for _ in range(cfg.max_place_retries):
            if i < n_visible:
                x, y = rng.randint(-vb, vb), rng.randint(-vb, vb)
            else:
                x, y = rng.randint(-pb, pb), rng.randint(-pb, pb)
                if abs(x) <= vb and abs(y) <= vb:
                    continue
            if not K.collision_at(arr, i, -1, x, y, radius, radii):
                arr[i, COL_X] = x
                arr[i, COL_Y] = y
                break
        else:
            raise PlacementFailureError(f"could not place object {i} after {cfg.max_place_retries} tries")

    # Shuffle row order so object ids carry no visibility signal.
    order = list(range(n))
    rng.shuffle(order)
    return array_to_scene(arr[order], plane)


def _intrinsic_candidates(state, value_index: int, used: set, visible_bound: int) -> list[int]:
    if value_index < 3:
        attr, val = 0, value_index
    elif value_index < 11:
        attr, val = 1, value_index - 3
    elif value_index < 14:
        attr, val = 2, value_index - 11
    else:
        attr, val = 3, value_index - 14
    out = []
    for o in range(len(state)):
        if (o, attr) in used or int(state[o, attr]) == val:
            continue
        if abs(int(state[o, COL_X])) > visible_bound or abs(int(state[o, COL_Y])) > visible_bound:
            continue  # intrinsic changes on margin objects are unobservable
        out.append(o)
    return out


def _move_candidates(state, value_index, used, plane: PlaneConfig, radii) -> list[tuple[int, str]]:
    out = []
    for o in range(len(state)):
        if (o, 4) in used:
            continue
        cls = K.move_class(
            state, o, value_index, radii, plane.plane_bound, plane.visible_bound, plane.step_unit
        )
        kind = _CLASS_TO_TYPE.get(cls)
        if kind is not None:
            out.append((o, kind))
    return out


def _move_type_factors(state, used, plane: PlaneConfig, type_weights: dict[str, float]) -> list[float]:
    """Per-move-token damping by the best reachable move-type weight.

    A drawn token can only realize the move types its geometry offers; tokens
    that cannot serve the currently starving type would otherwise win the
    object-stage lottery with an over-counted type. Collisions are ignored
    here (optimistic availability); the candidate stage enforces them.
    """
    n = len(state)
    vb, pb, su = plane.visible_bound, plane.plane_bound, plane.step_unit
    xs = [int(state[o, COL_X]) for o in range(n)]
    ys = [int(state[o, COL_Y]) for o in range(n)]
    vis = [abs(x) <= vb and abs(y) <= vb for x, y in zip(xs, ys)]
    movable = [o for o in range(n) if (o, 4) not in used]
    w_max = max(type_weights.values())
    factors = []
    for dx, dy in _MOVE_VECTORS:
        best = 0.0
        for o in movable:
            nx = xs[o] + dx * su
            ny = ys[o] + dy * su
            if abs(nx) > pb or abs(ny) > pb:
                continue
            after = abs(nx) <= vb and abs(ny) <= vb
            if vis[o]:
                kind = "inside" if after else "out"
            elif after:
                kind = "in"
            else:
                continue
            w = type_weights[kind]
            if w > best:
                best = w
                if best == w_max:
                    break
        factors.append(best / w_max)
    return factors


def sample_transformation(
    s: SceneGraph, tables: BalanceTables, cfg: GeneratorConfig, rng: random.Random
) -> tuple[AtomicTransformation, ...]:
    """Draw a reference transformation against the evolving scene.

    Invariants by construction: every step strict-applies, no (object,
    attribute) pair repeats, and no step targets an object that is invisible
    both before and after it.
    """
    t = cfg.tolerance
    plane = cfg.plane
    radii = plane.radii_array()
    state = scene_to_array(s)
    length = balanced_sample(cfg.lengths, tables.length, t, rng)
    used: set[tuple[int, int]] = set()
    seq: list[AtomicTransformation] = []
    prev_token: str | None = None
    one_step = np.zeros((1, 2), dtype=np.int32)
    one_status = np.zeros(1, dtype=np.int32)

    for _ in range(length):
        weights = [1.0] * 33
        if 1 in cfg.ngram_orders:
            w1 = balance_weights(VALUE_TOKENS, tables.value, t)
            weights = [a * b for a, b in zip(weights, w1)]
        if prev_token is not None and 2 in cfg.ngram_orders:
            w2 = balance_weights(VALUE_TOKENS, tables.pair_row(prev_token), t)
            weights = [a * b for a, b in zip(weights, w2)]
        type_weights = dict(
            zip(MOVE_TYPES, balance_weights(MOVE_TYPES, tables.move_type, t))
        )
        for vi, f in enumerate(_move_type_factors(state, used, plane, type_weights)):
            weights[FIRST_MOVE_INDEX + vi] *= f

        available = list(range(33))
        chosen = None
        for _ in range(cfg.max_draw_retries):
            if not available:
                break
            vi = _weighted_choice(rng, available, [weights[i] for i in available])
            if vi < FIRST_MOVE_INDEX:
                objs = _intrinsic_candidates(state, vi, used, plane.visible_bound)
                if objs:
                    ws = balance_weights(objs, tables.object_id, t)
                    chosen = (vi, _weighted_choice(rng, objs, ws), None)
                    break
            else:
                cands = _move_candidates(state, vi, used, plane, radii)
                if cands:
                    ws = [
                        a * b
                        for a, b in zip(
                            balance_weights([o for o, _ in cands], tables.object_id, t),
                            balance_weights([k for _, k in cands], tables.move_type, t),
                        )
                    ]
                    o, kind = cands[_weighted_choice(rng, range(len(cands)), ws)]
                    chosen = (vi, o, kind)
                    break
            available.remove(vi)
        if chosen is None:
            raise SamplingFailureError("no feasible atomic transformation for the current scene")

        vi, obj, move_kind = chosen
        one_step[0, 0] = obj
        one_step[0, 1] = vi
        failures = K.apply_steps(
            state, one_step, True, radii, plane.plane_bound, plane.step_unit, one_status
        )
        if failures:
            raise SamplingFailureError("pre-validated step failed to apply")
        token = VALUE_TOKENS[vi]
        tables.value.increment(token)
        if prev_token is not None:
            tables.pair_row(prev_token).increment(token)
        tables.object_id.increment(obj)
        if move_kind is not None:
            tables.move_type.increment(move_kind)
        attr = 4 if vi >= FIRST_MOVE_INDEX else (0 if vi < 3 else 1 if vi < 11 else 2 if vi < 14 else 3)
        used.add((obj, attr))
        seq.append(AtomicTransformation(obj, ALL_VALUES[vi]))
        prev_token = token

    return tuple(seq)


def generate_sample(
    cfg: GeneratorConfig,
    tables: BalanceTables,
    rng: random.Random,
    index: int = 0,
    split: str = "main",
) -> Sample:
    """Compose scene + transformation + application into one sample."""
    initial = sample_scene(cfg, tables, rng)
    reference = sample_transformation(initial, tables, cfg, rng)
    final, statuses = apply_sequence(initial, reference, ApplyMode.STRICT)
    assert all(st.ok for st in statuses), "generated reference must strict-apply"
    sample_id = f"{cfg.setting}-{cfg.seed & 0xFFFFFFFFFFFFFFFF:016x}-{index:06d}"
    return Sample(
        id=sample_id,
        setting=cfg.setting,
        initial=initial,
        final=final,
        reference=reference,
        view="center",
        split=split,
    )


class Generator:
    """Sequential sample generator owning the RNG and the count tables."""

    def __init__(self, cfg: GeneratorConfig):
        self.cfg = cfg
        self.tables = BalanceTables(cfg)
        self.rng = random.Random(cfg.seed)
        self._index = 0

    def sample(self, split: str = "main") -> Sample:
        s = generate_sample(self.cfg, self.tables, self.rng, self._index, split)
        self._index += 1
        return s

    def generate_splits(self) -> dict[str, list[Sample]]:
        out: dict[str, list[Sample]] = {}
        for split, size in self.cfg.split_sizes:
            out[split] = [self.sample(split) for _ in range(size)]
        return out


def derive_basic(samples) -> list[Sample]:
    """Keep only 1-step samples and relabel them as the basic setting."""
    return [replace(s, setting="basic") for s in samples if len(s.reference) == 1]


def expand_views(sample: Sample, rng: random.Random | None = None, exhaustive: bool = True) -> list[Sample]:
    """Derive view-setting samples: all three views, or one drawn at random."""
    if sample.setting != "event":
        raise ValueError("view expansion starts from event samples")
    views = VIEWS if exhaustive else (VIEWS[(rng or random).randrange(3)],)
    return [
        replace(sample, id=f"{sample.id}-{v}", setting="view", view=v) for v in views
    ]
