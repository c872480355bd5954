"""Dataset balance statistics.

Histograms for every balanced factor plus n-gram statistics of the
transformation sequences. N-gram counts use a sliding window of length n
over each reference sequence, and the summary statistics are computed over
the full option space (33^n cells), so uncovered options count as zeros.
"""

from __future__ import annotations

from collections import Counter
from statistics import median

import numpy as np

from . import _kernels as K
from .scene import COLORS, MATERIALS, SHAPES, SIZES, is_visible, scene_to_array
from .transform import FIRST_MOVE_INDEX, VALUE_TOKENS, steps_to_array, value_token

NGRAM_ORDERS = (1, 2, 3, 4)


def _move_types(sample) -> list[str]:
    """Classify every position step by walking the reference once."""
    cfg = sample.initial.config
    state = scene_to_array(sample.initial)
    steps = steps_to_array(sample.reference)
    radii = cfg.radii_array()
    status = np.zeros(1, dtype=np.int32)
    out = []
    for i in range(len(steps)):
        obj = int(steps[i, 0])
        if steps[i, 1] >= FIRST_MOVE_INDEX:
            bx, by = int(state[obj, 4]), int(state[obj, 5])
            vis_before = abs(bx) <= cfg.visible_bound and abs(by) <= cfg.visible_bound
        else:
            vis_before = None
        K.apply_steps(state, steps[i : i + 1], True, radii, cfg.plane_bound, cfg.step_unit, status)
        if vis_before is not None:
            ax, ay = int(state[obj, 4]), int(state[obj, 5])
            vis_after = abs(ax) <= cfg.visible_bound and abs(ay) <= cfg.visible_bound
            if vis_before and vis_after:
                out.append("inside")
            else:
                out.append("out" if vis_before else "in")
    return out


def _ngram_summary(counter: Counter, options: int) -> dict:
    observed = sorted(counter.values(), reverse=True)
    total = sum(observed)
    zeros = options - len(observed)
    values_min = 0 if zeros > 0 else (observed[-1] if observed else 0)
    values_max = observed[0] if observed else 0
    mean = total / options
    # median over all cells, the uncovered ones counting as zero
    if zeros >= options / 2:
        med = 0.0
    else:
        padded = observed + [0] * zeros
        med = float(median(padded))
    var = (sum(v * v for v in observed) + 0.0) / options - mean * mean
    return {
        "options": options,
        "total": total,
        "covered": len(observed),
        "min": values_min,
        "max": values_max,
        "median": med,
        "mean": mean,
        "std": max(var, 0.0) ** 0.5,
    }


def stats_report(samples) -> dict:
    """Structured balance report over a sample collection."""
    samples = list(samples)
    attr_hist = {
        "size": {s.value: 0 for s in SIZES},
        "color": {c.value: 0 for c in COLORS},
        "shape": {s.value: 0 for s in SHAPES},
        "material": {m.value: 0 for m in MATERIALS},
    }
    visible_hist: Counter = Counter()
    length_hist: Counter = Counter()
    object_hist: Counter = Counter()
    move_hist = {"in": 0, "out": 0, "inside": 0}
    ngram_counters: dict[int, Counter] = {n: Counter() for n in NGRAM_ORDERS}

    for sample in samples:
        cfg = sample.initial.config
        visible_hist[sum(1 for o in sample.initial.objects if is_visible(o.position, cfg))] += 1
        for o in sample.initial.objects:
            attr_hist["size"][o.size.value] += 1
            attr_hist["color"][o.color.value] += 1
            attr_hist["shape"][o.shape.value] += 1
            attr_hist["material"][o.material.value] += 1
        ref = sample.reference
        length_hist[len(ref)] += 1
        tokens = [value_token(t.value) for t in ref]
        for t in ref:
            object_hist[t.object_id] += 1
        for kind in _move_types(sample):
            move_hist[kind] += 1
        for n in NGRAM_ORDERS:
            for i in range(len(tokens) - n + 1):
                ngram_counters[n][tuple(tokens[i : i + n])] += 1

    return {
        "samples": len(samples),
        "attribute_values": attr_hist,
        "visible_object_count": {str(k): visible_hist[k] for k in sorted(visible_hist)},
        "transformation_length": {str(k): length_hist[k] for k in sorted(length_hist)},
        "object_id": {str(k): object_hist[k] for k in sorted(object_hist)},
        "move_type": move_hist,
        "ngrams": {
            str(n): _ngram_summary(ngram_counters[n], len(VALUE_TOKENS) ** n)
            for n in NGRAM_ORDERS
        },
        "value_1gram": {t: ngram_counters[1][(t,)] for t in VALUE_TOKENS},
    }


def format_report(report: dict) -> str:
    """Human-readable rendering of a stats report."""
    lines = [f"samples: {report['samples']}"]
    for factor in ("visible_object_count", "transformation_length", "object_id", "move_type"):
        hist = report[factor]
        lines.append(f"\n{factor}:")
        for key in hist:
            lines.append(f"  {key:>8}: {hist[key]}")
    lines.append("\nattribute_values:")
    for attr, hist in report["attribute_values"].items():
        row = ", ".join(f"{k}={v}" for k, v in hist.items())
        lines.append(f"  {attr}: {row}")
    lines.append("\nn-grams (over the full option space):")
    header = f"  {'n':>3} {'options':>10} {'min':>8} {'max':>8} {'median':>8} {'mean':>10} {'std':>10}"
    lines.append(header)
    for n, row in report["ngrams"].items():
        lines.append(
            f"  {n:>3} {row['options']:>10} {row['min']:>8} {row['max']:>8} "
            f"{row['median']:>8.1f} {row['mean']:>10.3f} {row['std']:>10.3f}"
        )
    return "\n".join(lines)
