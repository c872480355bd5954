"""Dataset serialization: JSONL split files plus a manifest.

A record stores the initial scene and the reference transformation; the
final scene is reconstructed on read by strict application (the round-trip
invariant guarantees equality for any dataset this package wrote). The
manifest carries the full generator config, per-file digests and a manifest
checksum, so identical configs regenerate byte-identical directories and
tampering is detected on read.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from . import __about__
from .errors import (
    ChecksumMismatchError,
    MalformedRecordError,
    UnknownSampleError,
    VersionMismatchError,
)
from .sampler import GeneratorConfig, Sample, SETTINGS, VIEWS
from .scene import (
    COLORS,
    MATERIALS,
    SHAPES,
    SIZES,
    Color,
    Material,
    ObjectState,
    Position,
    SceneGraph,
    Shape,
    Size,
)
from .transform import ApplyMode, apply_sequence, transformation_from_tokens, value_token

FORMAT_VERSION = 1

_SIZE_BY_NAME = {s.value: s for s in SIZES}
_COLOR_BY_NAME = {c.value: c for c in COLORS}
_SHAPE_BY_NAME = {s.value: s for s in SHAPES}
_MATERIAL_BY_NAME = {m.value: m for m in MATERIALS}


def sample_to_record(sample: Sample) -> dict:
    """Wire/record form; key order is part of the format."""
    return {
        "id": sample.id,
        "setting": sample.setting,
        "view": sample.view,
        "objects": [
            {
                "id": o.id,
                "size": o.size.value,
                "color": o.color.value,
                "shape": o.shape.value,
                "material": o.material.value,
                "x": o.position.x,
                "y": o.position.y,
            }
            for o in sample.initial.objects
        ],
        "transformations": [
            {"obj": t.object_id, "value": value_token(t.value)} for t in sample.reference
        ],
        "split": sample.split,
    }


def record_to_sample(record: dict, plane, line: int | None = None) -> Sample:
    try:
        objects = tuple(
            ObjectState(
                id=int(o["id"]),
                size=_SIZE_BY_NAME[o["size"]],
                color=_COLOR_BY_NAME[o["color"]],
                shape=_SHAPE_BY_NAME[o["shape"]],
                material=_MATERIAL_BY_NAME[o["material"]],
                position=Position(int(o["x"]), int(o["y"])),
            )
            for o in record["objects"]
        )
        initial = SceneGraph(objects=objects, config=plane)
        reference = transformation_from_tokens(
            (t["obj"], t["value"]) for t in record["transformations"]
        )
        setting = record["setting"]
        view = record["view"]
        if setting not in SETTINGS or view not in VIEWS:
            raise ValueError(f"bad setting/view: {setting!r}/{view!r}")
        sample_id = record["id"]
        split = record["split"]
    except (KeyError, ValueError, TypeError) as e:
        raise MalformedRecordError(str(e), line=line) from e
    final, statuses = apply_sequence(initial, reference, ApplyMode.STRICT)
    if not all(st.ok for st in statuses):
        raise MalformedRecordError(
            f"sample {sample_id}: reference transformation violates constraints", line=line
        )
    return Sample(
        id=sample_id,
        setting=setting,
        initial=initial,
        final=final,
        reference=reference,
        view=view,
        split=split,
    )


def _dump_record(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _manifest_checksum(manifest: dict) -> str:
    body = {k: v for k, v in manifest.items() if k != "manifest_checksum"}
    return _sha256(json.dumps(body, sort_keys=True).encode())


@dataclass
class Dataset:
    manifest: dict
    config: GeneratorConfig
    splits: dict[str, list[Sample]]

    def __post_init__(self):
        self._by_id = {s.id: s for split in self.splits.values() for s in split}

    def all_samples(self) -> list[Sample]:
        return [s for split in self.splits.values() for s in split]

    def get(self, sample_id: str) -> Sample:
        try:
            return self._by_id[sample_id]
        except KeyError:
            raise UnknownSampleError(f"unknown sample id: {sample_id}") from None


def write_dataset(splits: dict[str, list[Sample]], config: GeneratorConfig, out_dir) -> Path:
    """Write split JSONL files plus manifest.json; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    from .stats import stats_report  # late import: stats depends on dataset types

    files = {}
    for split in sorted(splits):
        lines = "".join(_dump_record(sample_to_record(s)) + "\n" for s in splits[split])
        data = lines.encode()
        path = out / f"{split}.jsonl"
        path.write_bytes(data)
        files[split] = {"file": path.name, "size": len(splits[split]), "sha256": _sha256(data)}

    report = stats_report([s for split in splits.values() for s in split])
    manifest = {
        "format_version": FORMAT_VERSION,
        "generator": config.to_dict(),
        "splits": files,
        "created_by": f"transcene {__about__.__version__}",
        "balance_digest": _sha256(json.dumps(report, sort_keys=True).encode()),
    }
    manifest["manifest_checksum"] = _manifest_checksum(manifest)
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest_path


def read_dataset(src_dir, verify: bool = True) -> Dataset:
    """Load a dataset directory, verifying checksums and the record schema."""
    src = Path(src_dir)
    manifest_path = src / "manifest.json"
    if not manifest_path.is_file():
        raise MalformedRecordError(f"no manifest.json in {src}")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as e:
        raise MalformedRecordError(f"manifest: {e}") from e
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(f"format version {version!r}, supported {FORMAT_VERSION}")
    if verify and _manifest_checksum(manifest) != manifest.get("manifest_checksum"):
        raise ChecksumMismatchError("manifest checksum does not match its content")
    config = GeneratorConfig.from_dict(manifest["generator"])

    splits: dict[str, list[Sample]] = {}
    for split, meta in manifest["splits"].items():
        path = src / meta["file"]
        data = path.read_bytes()
        if verify and _sha256(data) != meta["sha256"]:
            raise ChecksumMismatchError(f"{path.name}: content does not match manifest digest")
        samples = []
        for ln, raw in enumerate(data.decode().splitlines(), start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as e:
                raise MalformedRecordError(str(e), line=ln) from e
            samples.append(record_to_sample(record, config.plane, line=ln))
        if verify and len(samples) != meta["size"]:
            raise MalformedRecordError(
                f"{path.name}: expected {meta['size']} records, found {len(samples)}"
            )
        splits[split] = samples
    return Dataset(manifest=manifest, config=config, splits=splits)


def read_predictions(path) -> dict[str, tuple]:
    """Prediction file: JSONL of {"id", "transformations": [{"obj", "value"}]}."""
    out: dict[str, tuple] = {}
    for ln, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
            out[record["id"]] = transformation_from_tokens(
                (t["obj"], t["value"]) for t in record["transformations"]
            )
        except (json.JSONDecodeError, KeyError, ValueError, TypeError) as e:
            raise MalformedRecordError(str(e), line=ln) from e
    return out


def write_predictions(predictions: dict, path) -> None:
    lines = []
    for sample_id, T in predictions.items():
        lines.append(
            _dump_record(
                {
                    "id": sample_id,
                    "transformations": [
                        {"obj": t.object_id, "value": value_token(t.value)} for t in T
                    ],
                }
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))
