"""Command-line entry point.

Exit codes: 0 success, 1 user error (bad flags, unreadable paths, schema
mismatches), 2 internal error.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from .dataset import read_dataset, read_predictions, write_dataset
from .errors import EngineError
from .metrics import aggregate, eval_multi, order_sensitive_subset, random_order_eo
from .render import VIEW_ANGLES, render_schematic
from .sampler import Generator, GeneratorConfig, expand_views
from .stats import format_report, stats_report
from .transform import solve, value_token


@click.group()
def cli():
    """Scene-graph transformation engine: generate, evaluate, serve."""


def _parse_splits(size: int, splits: str | None) -> tuple[tuple[str, int], ...]:
    if not splits:
        return (("main", size),)
    out = []
    for part in splits.split(","):
        name, _, n = part.partition("=")
        if not n.isdigit():
            raise click.UsageError(f"bad --splits entry {part!r}, expected NAME=COUNT")
        out.append((name.strip(), int(n)))
    return tuple(out)


@cli.command()
@click.option("--setting", type=click.Choice(["basic", "event", "view"]), default="event")
@click.option("--size", type=int, default=1000, help="Samples per run (before view expansion).")
@click.option("--seed", type=int, default=0)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@click.option("--splits", default=None, help="Comma list NAME=COUNT; overrides --size.")
@click.option("--views", type=click.Choice(["exhaustive", "sampled"]), default="exhaustive",
              help="View expansion mode for --setting view.")
def generate(setting, size, seed, out_dir, splits, views):
    """Generate a dataset directory (JSONL splits + manifest)."""
    cfg = GeneratorConfig(
        seed=seed,
        setting="event" if setting == "view" else setting,
        lengths=(1,) if setting == "basic" else (1, 2, 3, 4),
        split_sizes=_parse_splits(size, splits),
    )
    gen = Generator(cfg)
    generated = gen.generate_splits()
    if setting == "view":
        view_rng = random.Random(seed ^ 0x5EED)
        generated = {
            split: [
                v
                for s in samples
                for v in expand_views(s, rng=view_rng, exhaustive=views == "exhaustive")
            ]
            for split, samples in generated.items()
        }
        cfg = GeneratorConfig.from_dict({**cfg.to_dict(), "setting": "view"})
    manifest = write_dataset(generated, cfg, out_dir)
    total = sum(len(v) for v in generated.values())
    click.echo(f"wrote {total} samples to {out_dir} (manifest: {manifest.name})")


@cli.command()
@click.option("--data", "data_dir", type=click.Path(path_type=Path), required=True,
              envvar="TRANSCENE_DATA")
@click.option("--pred", "pred_file", type=click.Path(path_type=Path), required=True)
@click.option("--order-analysis", is_flag=True, help="Append order-sensitivity analysis.")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--jobs", type=int, default=1, help="Worker processes for scoring.")
@click.option("--json", "as_json", is_flag=True, help="Emit the structured report.")
def evaluate(data_dir, pred_file, order_analysis, trials, jobs, as_json):
    """Score a prediction file against a dataset."""
    ds = read_dataset(data_dir)
    preds = read_predictions(pred_file)
    pairs = [(ds.get(sample_id), T) for sample_id, T in preds.items()]
    scores = _score_pairs(pairs, jobs)
    report = aggregate(scores).to_dict()
    out = {"report": report}
    if order_analysis:
        samples = [s for s, _ in pairs]
        subset, fraction = order_sensitive_subset(samples)
        analysis = {
            "order_sensitive_count": len(subset),
            "order_sensitive_fraction": fraction,
            "trials": trials,
        }
        if subset:
            analysis["random_order_eo"] = random_order_eo(subset, trials=trials, seed=0)
        out["order_analysis"] = analysis
    if as_json:
        click.echo(report_json(out))
    else:
        click.echo(_format_eval(out))


def _score_pairs(pairs, jobs: int):
    if jobs <= 1 or len(pairs) < 64:
        return [eval_multi(T, s) for s, T in pairs]
    from concurrent.futures import ProcessPoolExecutor

    chunks = [pairs[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_score_chunk, chunks))
    # Preserve input order: chunk i holds items i, i+jobs, ...
    out = [None] * len(pairs)
    for i, chunk_scores in enumerate(results):
        out[i :: jobs] = chunk_scores
    return out


def _score_chunk(chunk):
    return [eval_multi(T, s) for s, T in chunk]


def report_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _format_eval(out: dict) -> str:
    r = out["report"]
    lines = [
        f"samples evaluated: {r['count']}",
        f"AD   {r['AD']:.4f}",
        f"AND  {r['AND']:.4f}",
        f"LAcc {r['LAcc']:.4f}",
        f"Acc  {r['Acc']:.4f}",
        f"EO   {r['EO']:.4f}",
    ]
    if r["per_length"]:
        lines.append("per reference length:")
        for n, row in r["per_length"].items():
            lines.append(
                f"  {n}-step  AD {row['AD']:.4f}  AND {row['AND']:.4f}  "
                f"LAcc {row['LAcc']:.4f}  Acc {row['Acc']:.4f}  (n={row['count']})"
            )
    if "order_analysis" in out:
        a = out["order_analysis"]
        lines.append(
            f"order-sensitive: {a['order_sensitive_count']} "
            f"({100 * a['order_sensitive_fraction']:.2f}%)"
        )
        if "random_order_eo" in a:
            lines.append(f"random-order EO over {a['trials']} trials: {a['random_order_eo']:.4f}")
    return "\n".join(lines)


@cli.command()
@click.option("--data", "data_dir", type=click.Path(path_type=Path), required=True,
              envvar="TRANSCENE_DATA")
@click.option("--split", default=None, help="Restrict to one split.")
@click.option("--json", "as_json", is_flag=True)
def stats(data_dir, split, as_json):
    """Print balance statistics of a dataset."""
    ds = read_dataset(data_dir)
    if split is not None:
        if split not in ds.splits:
            raise click.UsageError(f"no split {split!r} in {data_dir}")
        samples = ds.splits[split]
    else:
        samples = ds.all_samples()
    report = stats_report(samples)
    click.echo(report_json(report) if as_json else format_report(report))


@cli.command()
@click.option("--data", "data_dir", type=click.Path(path_type=Path), required=True,
              envvar="TRANSCENE_DATA")
@click.option("--id", "sample_id", required=True)
@click.option("--view", type=click.Choice(sorted(VIEW_ANGLES)), default=None,
              help="Defaults to the sample's own view label.")
@click.option("--state", type=click.Choice(["initial", "final"]), default="final")
@click.option("--out", "out_file", type=click.Path(path_type=Path), required=True)
@click.option("--full-plane", is_flag=True, help="Draw the margin and hidden objects too.")
def render(data_dir, sample_id, view, state, out_file, full_plane):
    """Render a sample state to an SVG file."""
    ds = read_dataset(data_dir)
    sample = ds.get(sample_id)
    scene = sample.initial if state == "initial" else sample.final
    # The initial state is always the center view.
    chosen = view or (sample.view if state == "final" else "center")
    Path(out_file).write_text(render_schematic(scene, chosen, full_plane=full_plane))
    click.echo(f"wrote {out_file}")


@cli.command(name="solve")
@click.option("--data", "data_dir", type=click.Path(path_type=Path), required=True,
              envvar="TRANSCENE_DATA")
@click.option("--id", "sample_id", required=True)
@click.option("--json", "as_json", is_flag=True)
def solve_cmd(data_dir, sample_id, as_json):
    """Recover a feasible transformation for a sample from its two states."""
    ds = read_dataset(data_dir)
    sample = ds.get(sample_id)
    solution = solve(sample.initial, sample.final)
    steps = [{"obj": t.object_id, "value": value_token(t.value)} for t in solution]
    if as_json:
        click.echo(report_json({"id": sample_id, "transformations": steps}))
    else:
        for s in steps:
            click.echo(f"({s['obj']}, {s['value']})")


@cli.command()
@click.option("--data", "data_dir", type=click.Path(path_type=Path), required=True,
              envvar="TRANSCENE_DATA")
@click.option("--addr", default="127.0.0.1:8000", show_default=True)
@click.option("--store", "store_path", type=click.Path(path_type=Path), default=None,
              help="Session database path (default: <data>/sessions.db).")
@click.option("--trusted/--no-trusted", default=True,
              help="Trusted mode may reveal reference transformations.")
@click.option("--ui", "ui_dir", type=click.Path(path_type=Path), default=None,
              help="Serve a built web UI from this directory at /ui.")
def serve(data_dir, addr, store_path, trusted, ui_dir):
    """Run the evaluation / reward / session service."""
    import uvicorn

    from .service import create_app

    host, _, port = addr.partition(":")
    app = create_app(
        read_dataset(data_dir),
        store_path=store_path or Path(data_dir) / "sessions.db",
        trusted=trusted,
        ui_dir=ui_dir,
    )
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="info")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as e:
        click.echo(f"error: {e.format_message()}", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except (EngineError, FileNotFoundError, PermissionError) as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except click.exceptions.Abort:
        return 1
    except Exception as e:  # internal error
        click.echo(f"internal error: {e!r}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
