import random
from collections import Counter

import pytest

from transcene import (
    CountTable,
    Generator,
    GeneratorConfig,
    Sample,
    balanced_sample,
    derive_basic,
    expand_views,
    is_visible,
    scene_valid,
)
from transcene.sampler import BalanceTables, balance_weights, sample_scene


def test_balanced_sample_exact_probabilities():
    table = CountTable("f", ["a", "b"])
    table.counts = {"a": 2, "b": 0}
    w = balance_weights(["a", "b"], table, 0.1)
    total = sum(w)
    assert abs(w[0] / total - 1 / 22) < 1e-12
    assert abs(w[1] / total - 21 / 22) < 1e-12

    even = CountTable("g", ["a", "b", "c", "d"])
    w = balance_weights(even.options, even, 0.1)
    probs = [x / sum(w) for x in w]
    assert len(set(probs)) == 1  # exactly uniform


def test_balanced_sample_commits_and_equalizes(rng):
    table = CountTable("f", ["a", "b", "c", "d"])
    for _ in range(10000):
        balanced_sample(table.options, table, 0.1, rng)
    counts = table.counts
    assert sum(counts.values()) == 10000
    mean = 10000 / 4
    assert max(counts.values()) - min(counts.values()) <= 0.02 * mean


def test_balanced_sample_monotone_fairness(rng):
    table = CountTable("f", ["a", "b", "c"])
    for _ in range(200):
        w = balance_weights(table.options, table, 0.1)
        p_before = {o: x / sum(w) for o, x in zip(table.options, w)}
        chosen = balanced_sample(table.options, table, 0.1, rng)
        w2 = balance_weights(table.options, table, 0.1)
        p_after = {o: x / sum(w2) for o, x in zip(table.options, w2)}
        assert p_after[chosen] <= p_before[chosen] + 1e-12


def test_sample_scene_valid_and_counts(rng):
    cfg = GeneratorConfig(seed=1)
    tables = BalanceTables(cfg)
    for _ in range(50):
        s = sample_scene(cfg, tables, rng)
        assert len(s) == cfg.objects_per_scene
        assert scene_valid(s).valid
        visible = sum(1 for o in s.objects if is_visible(o.position, s.config))
        assert 3 <= visible <= 8


def test_sample_scene_degenerate_range(rng):
    cfg = GeneratorConfig(seed=1, visible_count_range=(1, 1))
    tables = BalanceTables(cfg)
    s = sample_scene(cfg, tables, rng)
    assert sum(1 for o in s.objects if is_visible(o.position, s.config)) == 1


def test_scene_color_balance_at_10k(event_10k):
    samples, _ = event_10k
    colors = Counter(o.color for s in samples for o in s.initial.objects)
    uniform = sum(colors.values()) / 8
    for c, n in colors.items():
        assert abs(n - uniform) / uniform < 0.02, (c, n, uniform)


def test_reference_invariants(small_event):
    for s in small_event:
        assert 1 <= len(s.reference) <= 4
        pairs = [(t.object_id, t.attribute) for t in s.reference]
        assert len(pairs) == len(set(pairs))  # no repeated (object, attribute)


def test_generator_determinism():
    cfg = GeneratorConfig(seed=99, split_sizes=(("main", 25),))
    a = Generator(cfg).generate_splits()["main"]
    b = Generator(cfg).generate_splits()["main"]
    assert a == b
    c = Generator(GeneratorConfig(seed=100, split_sizes=(("main", 25),))).generate_splits()["main"]
    assert [s.id for s in a] != [s.id for s in c]
    assert a[0].initial != c[0].initial


def test_generated_sample_round_trip(small_event):
    from transcene import ApplyMode, apply_sequence

    for s in small_event:
        final, statuses = apply_sequence(s.initial, s.reference, ApplyMode.STRICT)
        assert all(x.ok for x in statuses)
        assert final == s.final


def test_derive_basic(small_event):
    basic = derive_basic(small_event)
    assert all(len(s.reference) == 1 for s in basic)
    assert all(s.setting == "basic" for s in basic)
    share = len(basic) / len(small_event)
    assert 0.15 < share < 0.35  # lengths are balanced over {1,2,3,4}
    assert derive_basic([]) == []


def test_expand_views(small_event):
    s = small_event[0]
    views = expand_views(s, exhaustive=True)
    assert [v.view for v in views] == ["left", "center", "right"]
    assert all(v.initial == s.initial and v.final == s.final for v in views)
    assert all(v.setting == "view" for v in views)
    assert len({v.id for v in views}) == 3

    one = expand_views(s, rng=random.Random(5), exhaustive=False)
    two = expand_views(s, rng=random.Random(5), exhaustive=False)
    assert len(one) == 1 and one == two


def test_view_scores_ignore_view_label(small_event):
    from transcene import eval_multi

    s = small_event[1]
    for v in expand_views(s, exhaustive=True):
        score = eval_multi(s.reference, v)
        assert score.strict_correct and score.distance == 0


def test_config_round_trip():
    cfg = GeneratorConfig(seed=5, setting="basic", lengths=(1,), split_sizes=(("train", 10), ("val", 2)))
    assert GeneratorConfig.from_dict(cfg.to_dict()) == cfg


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(seed=0, visible_count_range=(0, 5))
    with pytest.raises(ValueError):
        GeneratorConfig(seed=0, tolerance=0.0)
    with pytest.raises(ValueError):
        GeneratorConfig(seed=0, setting="hard")
