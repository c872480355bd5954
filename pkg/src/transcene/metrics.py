"""Reconstruction-based evaluation metrics and reward signals.

A predicted sequence is scored by applying it to the initial scene and
counting attribute-level mismatches against the stored final scene,
comparing only what visible objects expose. Distances always use loose
application so invalid predictions still get a finite score; strict
constraint satisfaction is folded into Acc alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import mean

import numpy as np

from . import _kernels as K
from .errors import MismatchedIdsError
from .sampler import Sample
from .scene import SceneGraph, scene_to_array
from .transform import (
    ApplyMode,
    AtomicTransformation,
    Transformation,
    attribute_of,
    is_order_sensitive,
    steps_to_array,
    value_token,
)

REWARD_KINDS = ("corr", "dist", "corr_and_dist")


@dataclass(frozen=True)
class BasicScore:
    obj_correct: bool
    attr_correct: bool
    val_correct: bool
    all_correct: bool


@dataclass(frozen=True)
class MultiScore:
    distance: int
    normalized_distance: float
    strict_correct: bool
    loose_correct: bool
    reference_length: int

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "normalized_distance": self.normalized_distance,
            "strict_correct": self.strict_correct,
            "loose_correct": self.loose_correct,
            "reference_length": self.reference_length,
        }


@dataclass(frozen=True)
class AggregateReport:
    AD: float
    AND: float
    Acc: float
    LAcc: float
    EO: float
    count: int
    per_length: dict

    def to_dict(self) -> dict:
        return {
            "AD": self.AD,
            "AND": self.AND,
            "Acc": self.Acc,
            "LAcc": self.LAcc,
            "EO": self.EO,
            "count": self.count,
            "per_length": self.per_length,
        }


def eval_basic(pred: AtomicTransformation, ref: AtomicTransformation) -> BasicScore:
    """Direct triplet comparison for single-step problems."""
    obj = pred.object_id == ref.object_id
    attr = attribute_of(pred.value) == attribute_of(ref.value)
    val = value_token(pred.value) == value_token(ref.value)
    return BasicScore(obj, attr, val, obj and attr and val)


def scene_distance(a: SceneGraph, b: SceneGraph) -> int:
    """Count attribute-level differences observable through visible objects.

    Objects invisible in both scenes contribute nothing; a visibility change
    costs 1 (charged to position); intrinsic attributes count when the object
    is visible in at least one scene.
    """
    if len(a) != len(b):
        raise MismatchedIdsError(f"object counts differ: {len(a)} vs {len(b)}")
    if a.config != b.config:
        raise ValueError("scenes use different plane configs")
    return int(K.scene_distance(scene_to_array(a), scene_to_array(b), a.config.visible_bound))


def _eo(lacc: float, acc: float) -> float:
    return (lacc - acc) / lacc if lacc > 0 else 0.0


def _score_arrays(
    initial_arr: np.ndarray,
    final_arr: np.ndarray,
    steps: np.ndarray,
    ref_length: int,
    radii: np.ndarray,
    plane_bound: int,
    visible_bound: int,
    step_unit: int,
) -> MultiScore:
    """Fast path used by eval_multi and the random-order analysis."""
    m = len(steps)
    statuses = np.zeros(m, dtype=np.int32)
    loose = initial_arr.copy()
    K.apply_steps(loose, steps, False, radii, plane_bound, step_unit, statuses)
    distance = int(K.scene_distance(loose, final_arr, visible_bound))
    strict = initial_arr.copy()
    failures = K.apply_steps(strict, steps, True, radii, plane_bound, step_unit, statuses)
    strict_ok = failures == 0 and int(K.scene_distance(strict, final_arr, visible_bound)) == 0
    return MultiScore(
        distance=distance,
        normalized_distance=distance / ref_length,
        strict_correct=strict_ok,
        loose_correct=distance == 0,
        reference_length=ref_length,
    )


def eval_multi(pred: Transformation, sample: Sample) -> MultiScore:
    """Score a prediction of any length (including empty or invalid) against a sample."""
    cfg = sample.initial.config
    return _score_arrays(
        scene_to_array(sample.initial),
        scene_to_array(sample.final),
        steps_to_array(pred),
        len(sample.reference),
        cfg.radii_array(),
        cfg.plane_bound,
        cfg.visible_bound,
        cfg.step_unit,
    )


def aggregate(scores) -> AggregateReport:
    """Corpus-level AD / AND / Acc / LAcc / EO with a per-reference-length breakdown."""
    scores = list(scores)
    if not scores:
        raise ValueError("cannot aggregate an empty score list")

    def summarize(group) -> dict:
        ad = mean(s.distance for s in group)
        and_ = mean(s.normalized_distance for s in group)
        acc = mean(1.0 if s.strict_correct else 0.0 for s in group)
        lacc = mean(1.0 if s.loose_correct else 0.0 for s in group)
        return {
            "AD": ad,
            "AND": and_,
            "Acc": acc,
            "LAcc": lacc,
            "EO": _eo(lacc, acc),
            "count": len(group),
        }

    total = summarize(scores)
    lengths = sorted({s.reference_length for s in scores})
    per_length = {
        str(n): summarize([s for s in scores if s.reference_length == n]) for n in lengths
    }
    return AggregateReport(
        AD=total["AD"],
        AND=total["AND"],
        Acc=total["Acc"],
        LAcc=total["LAcc"],
        EO=total["EO"],
        count=total["count"],
        per_length=per_length,
    )


def reward(pred: Transformation, sample: Sample, kind: str = "corr_and_dist") -> float:
    """REINFORCE-style scalar: correctness, negative normalized distance, or both."""
    if kind not in REWARD_KINDS:
        raise ValueError(f"unknown reward kind {kind!r}; expected one of {REWARD_KINDS}")
    score = eval_multi(pred, sample)
    corr = 1.0 if score.strict_correct else 0.0
    dist = -score.normalized_distance
    if kind == "corr":
        return corr
    if kind == "dist":
        return dist
    return corr + dist


def order_sensitive_subset(samples, max_length: int = 4) -> tuple[list, float]:
    """Samples whose reference atomics admit a constraint-violating permutation."""
    samples = list(samples)
    subset = [s for s in samples if is_order_sensitive(s.initial, s.reference, max_length)]
    fraction = len(subset) / len(samples) if samples else 0.0
    return subset, fraction


def random_order_eo(samples, trials: int = 100, seed: int = 0) -> float:
    """Mean EO over trials where each sample's reference atomics get a random order.

    Intended for the order-sensitive subset: the atomic multiset is always
    correct, so LAcc stays at 1 and EO isolates pure ordering error.
    """
    import random as _random

    samples = list(samples)
    if not samples:
        raise ValueError("random_order_eo needs a non-empty sample list")
    rng = _random.Random(seed)
    prepared = []
    for s in samples:
        cfg = s.initial.config
        prepared.append(
            (
                scene_to_array(s.initial),
                scene_to_array(s.final),
                steps_to_array(s.reference),
                len(s.reference),
                cfg.radii_array(),
                cfg.plane_bound,
                cfg.visible_bound,
                cfg.step_unit,
            )
        )
    eos = []
    for _ in range(trials):
        trial_scores = []
        for initial_arr, final_arr, steps, ref_len, radii, pb, vb, su in prepared:
            order = list(range(ref_len))
            rng.shuffle(order)
            trial_scores.append(
                _score_arrays(initial_arr, final_arr, steps[order], ref_len, radii, pb, vb, su)
            )
        eos.append(aggregate(trial_scores).EO)
    return mean(eos)
