import json
from pathlib import Path

import pytest

from transcene import (
    Generator,
    GeneratorConfig,
    read_dataset,
    read_predictions,
    write_dataset,
    write_predictions,
)
from transcene.dataset import record_to_sample, sample_to_record
from transcene.errors import ChecksumMismatchError, MalformedRecordError, VersionMismatchError


@pytest.fixture(scope="module")
def dataset_dir(tmp_path_factory):
    cfg = GeneratorConfig(seed=3, split_sizes=(("train", 60), ("test", 20)))
    splits = Generator(cfg).generate_splits()
    out = tmp_path_factory.mktemp("ds")
    write_dataset(splits, cfg, out)
    return out, cfg, splits


def _dir_bytes(path: Path) -> dict:
    return {p.name: p.read_bytes() for p in sorted(path.iterdir()) if p.is_file()}


def test_round_trip_bytes(dataset_dir, tmp_path):
    src, cfg, _ = dataset_dir
    ds = read_dataset(src)
    write_dataset(ds.splits, ds.config, tmp_path)
    assert _dir_bytes(src) == _dir_bytes(tmp_path)


def test_round_trip_values(dataset_dir):
    src, cfg, splits = dataset_dir
    ds = read_dataset(src)
    assert ds.config == cfg
    assert set(ds.splits) == {"train", "test"}
    assert ds.splits["train"] == splits["train"]
    assert ds.splits["test"] == splits["test"]


def test_record_shape(dataset_dir):
    _, cfg, splits = dataset_dir
    record = sample_to_record(splits["train"][0])
    assert list(record) == ["id", "setting", "view", "objects", "transformations", "split"]
    assert list(record["objects"][0]) == ["id", "size", "color", "shape", "material", "x", "y"]
    back = record_to_sample(record, cfg.plane)
    assert back == splits["train"][0]


def test_get_by_id(dataset_dir):
    src, _, splits = dataset_dir
    ds = read_dataset(src)
    sample = splits["test"][0]
    assert ds.get(sample.id) == sample
    from transcene.errors import UnknownSampleError

    with pytest.raises(UnknownSampleError):
        ds.get("nope")


def test_manifest_tamper_detection(dataset_dir, tmp_path):
    src, _, _ = dataset_dir
    clone = tmp_path / "clone"
    clone.mkdir()
    for p in src.iterdir():
        (clone / p.name).write_bytes(p.read_bytes())
    manifest = json.loads((clone / "manifest.json").read_text())
    manifest["generator"]["seed"] = 12345
    (clone / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    with pytest.raises(ChecksumMismatchError):
        read_dataset(clone)


def test_data_tamper_detection(dataset_dir, tmp_path):
    src, _, _ = dataset_dir
    clone = tmp_path / "clone"
    clone.mkdir()
    for p in src.iterdir():
        (clone / p.name).write_bytes(p.read_bytes())
    data = (clone / "train.jsonl").read_text().splitlines()
    data[0] = data[0].replace('"view":"center"', '"view":"left"')
    (clone / "train.jsonl").write_text("\n".join(data) + "\n")
    with pytest.raises(ChecksumMismatchError):
        read_dataset(clone)


def test_malformed_record_line_number(dataset_dir, tmp_path):
    src, _, _ = dataset_dir
    clone = tmp_path / "clone"
    clone.mkdir()
    for p in src.iterdir():
        (clone / p.name).write_bytes(p.read_bytes())
    lines = (clone / "train.jsonl").read_text().splitlines()
    lines[4] = lines[4][: len(lines[4]) // 2]  # truncate mid-record
    (clone / "train.jsonl").write_text("\n".join(lines) + "\n")
    with pytest.raises(MalformedRecordError) as err:
        read_dataset(clone, verify=False)
    assert err.value.line == 5


def test_version_mismatch(dataset_dir, tmp_path):
    src, _, _ = dataset_dir
    clone = tmp_path / "clone"
    clone.mkdir()
    for p in src.iterdir():
        (clone / p.name).write_bytes(p.read_bytes())
    manifest = json.loads((clone / "manifest.json").read_text())
    manifest["format_version"] = 999
    (clone / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    with pytest.raises(VersionMismatchError):
        read_dataset(clone, verify=False)


def test_reference_must_strict_apply(dataset_dir, tmp_path):
    _, cfg, splits = dataset_dir
    record = sample_to_record(splits["train"][0])
    # an immediate no-op violates strict application
    first = record["objects"][0]
    record["transformations"] = [{"obj": 0, "value": first["color"]}]
    with pytest.raises(MalformedRecordError):
        record_to_sample(record, cfg.plane)


def test_predictions_round_trip(dataset_dir, tmp_path):
    _, _, splits = dataset_dir
    preds = {s.id: s.reference for s in splits["test"]}
    path = tmp_path / "preds.jsonl"
    write_predictions(preds, path)
    back = read_predictions(path)
    assert back == {k: tuple(v) for k, v in preds.items()}

    path.write_text('{"id": "x"}\n')
    with pytest.raises(MalformedRecordError):
        read_predictions(path)
