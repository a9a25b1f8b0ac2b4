"""Command-line interface.

Exit codes: 0 success, 1 infeasible/empty result, 2 usage or validation
error, 3 I/O failure.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import __version__
from .assignment import merit_balanced, merit_isolated, solve_nxn
from .associations import (
    AssociationTable,
    NoiseModel,
    experiment_palette,
    load_associations,
    load_bundled,
)
from .color import ColorSpec
from .distance import pairwise_report
from .errors import SemdiscError, ValidationError
from .inference import sample_assignment_distribution
from .interpret import build_stimuli, prediction_csv, preset
from .manifest import RunManifest
from .optimizer import PaletteConstraints, enumerate_palettes
from .plots import distances_svg

EXIT_EMPTY = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SemdiscError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)
        except OSError as exc:
            click.echo(f"i/o error: {exc}", err=True)
            sys.exit(EXIT_IO)

    return wrapper


def _load_table(dataset) -> AssociationTable:
    if dataset is None:
        return load_bundled()
    candidates = [
        ("colors.csv", "ratings.csv"),
        ("uw58_colors.csv", "uw58_fruit_associations.csv"),
    ]
    for colors_name, ratings_name in candidates:
        colors = os.path.join(dataset, colors_name)
        ratings = os.path.join(dataset, ratings_name)
        if os.path.exists(colors) and os.path.exists(ratings):
            with open(colors, "rb") as cf, open(ratings, "rb") as rf:
                return load_associations(cf, rf)
    raise ValidationError(f"no colors/ratings CSV pair found in {dataset}")


def _parse_concepts(value):
    names = [v.strip() for v in value.split(",") if v.strip()]
    if not names:
        raise ValidationError("no concepts given")
    return names


def _parse_colors(value):
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"colors must be integer ids: {value!r}") from None


def _triple(value, flag):
    parts = value.split(",")
    if len(parts) != 3:
        raise ValidationError(f"{flag} expects three comma-separated numbers")
    return tuple(float(v) for v in parts)


@click.group()
@click.version_option(__version__)
@click.option("--threads", type=int, default=None, help="Cap worker threads.")
def main(threads):
    """Semantic discriminability toolkit for categorical color palettes."""
    if threads is not None:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(threads)


@main.command()
@click.option("--lab", default=None, help="L,a,b triple to convert.")
@click.option("--xyy", "xyy", default=None, help="x,y,Y triple to convert.")
@click.option("--id", "color_id", type=int, default=None, help="Bundled color id.")
@click.option("--all", "dump_all", is_flag=True, help="Dump every bundled color.")
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), default=None)
@_handle_errors
def convert(lab, xyy, color_id, dump_all, dataset):
    """Convert colors between LAB, xyY, LCh and sRGB."""
    if dump_all:
        table = _load_table(dataset)
        click.echo(json.dumps([c.to_json_dict() for c in table.colors], indent=2))
        return
    if color_id is not None:
        table = _load_table(dataset)
        click.echo(json.dumps(table.color(color_id).to_json_dict(), indent=2))
        return
    if lab is not None:
        spec = ColorSpec.from_lab(_triple(lab, "--lab"))
    elif xyy is not None:
        spec = ColorSpec.from_xyY(_triple(xyy, "--xyy"))
    else:
        raise ValidationError("give one of --lab, --xyy, --id or --all")
    click.echo(json.dumps(spec.to_json_dict(), indent=2))


@main.command()
@click.option("--concepts", required=True, help="Two concept names, comma-separated.")
@click.option("--colors", required=True, help="Color ids, comma-separated.")
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--scale", type=float, default=1.4, help="Noise model scale.")
@click.option("--out", required=True, type=click.Path(file_okay=False))
@_handle_errors
def distance(concepts, colors, dataset, scale, out):
    """Write pairwise semantic/perceptual distance CSVs and an SVG plot."""
    table = _load_table(dataset)
    sub = table.subset(_parse_concepts(concepts), _parse_colors(colors))
    report = pairwise_report(sub, NoiseModel(scale))
    os.makedirs(out, exist_ok=True)
    for which in ("delta_s", "delta_e"):
        with open(os.path.join(out, f"{which}.csv"), "w", encoding="utf-8") as f:
            f.write(f"color_1,color_2,{which}\n")
            for c1, c2, ds, de in report.pairs():
                f.write(f"{c1},{c2},{(ds if which == 'delta_s' else de)!r}\n")
    with open(os.path.join(out, "distances.svg"), "w", encoding="utf-8") as f:
        f.write(distances_svg(report, sub.colors))
    with open(os.path.join(out, "manifest.json"), "w", encoding="utf-8") as f:
        f.write(RunManifest(command=" ".join(sys.argv[1:])).to_json())


@main.command()
@click.option("--concepts", required=True)
@click.option("--colors", required=True)
@click.option("--merit", "merit_kind", type=click.Choice(["isolated", "balanced"]), default="isolated")
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), default=None)
@_handle_errors
def assign(concepts, colors, merit_kind, dataset):
    """Solve the max-merit assignment for the given concepts and colors."""
    table = _load_table(dataset)
    sub = table.subset(_parse_concepts(concepts), _parse_colors(colors))
    merit = merit_isolated(sub) if merit_kind == "isolated" else merit_balanced(sub)
    click.echo(solve_nxn(merit).to_json())


@main.command()
@click.option("--concepts", required=True)
@click.option("--colors", required=True)
@click.option("--samples", type=int, default=100_000)
@click.option("--seed", type=int, default=0)
@click.option("--scale", type=float, default=1.4)
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), default=None)
@_handle_errors
def discriminability(concepts, colors, samples, seed, scale, dataset):
    """Monte-Carlo assignment distribution and entropy-based index."""
    table = _load_table(dataset)
    names = _parse_concepts(concepts)
    sub = table.subset(names, _parse_colors(colors))
    dist = sample_assignment_distribution(sub, NoiseModel(scale), samples, seed)
    click.echo(dist.to_json(n=len(names)))


@main.command()
@click.option("--experiment", type=click.Choice(["1", "2"]), default=None)
@click.option("--concepts", default=None)
@click.option("--colors", default=None)
@click.option("--model", "acc_label", default="Acc 2.2", help="Accuracy model preset.")
@click.option("--rt-model", "rt_label", default=None, help="RT model preset.")
@click.option("--scale", type=float, default=1.4)
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_handle_errors
def predict(experiment, concepts, colors, acc_label, rt_label, scale, dataset, out):
    """Predict decoding accuracy (and optionally RT) per stimulus row."""
    table = _load_table(dataset)
    if experiment is not None:
        names, ids = experiment_palette(int(experiment))
        names = list(names)
    elif concepts and colors:
        names, ids = _parse_concepts(concepts), _parse_colors(colors)
    else:
        raise ValidationError("give --experiment or both --concepts and --colors")
    rows = build_stimuli(table.subset(names, ids), NoiseModel(scale))
    acc_spec = preset(acc_label)
    rt_spec = preset(rt_label) if rt_label else None
    csv_text = prediction_csv(rows, acc_spec=acc_spec, rt_spec=rt_spec)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(csv_text)
        with open(out + ".manifest.json", "w", encoding="utf-8") as f:
            f.write(RunManifest(command=" ".join(sys.argv[1:])).to_json())
    else:
        click.echo(csv_text, nl=False)


@main.command()
@click.option("--concepts", required=True)
@click.option("--constraints", "constraints_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--limit", type=int, default=20)
@click.option("--objective", type=click.Choice(["mean_delta_s", "min_delta_s", "min_delta_e"]), default="mean_delta_s")
@click.option("--pool", default=None, help="Restrict the candidate color ids.")
@click.option("--scale", type=float, default=1.4)
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), default=None)
@_handle_errors
def optimize(concepts, constraints_path, limit, objective, pool, scale, dataset):
    """Search for feasible palettes, ranked by the chosen objective."""
    table = _load_table(dataset)
    if constraints_path:
        with open(constraints_path, "r", encoding="utf-8") as f:
            constraints = PaletteConstraints.from_json_dict(json.load(f))
    else:
        constraints = PaletteConstraints.default()
    found = enumerate_palettes(
        table,
        tuple(_parse_concepts(concepts)),
        constraints,
        limit=limit,
        model=NoiseModel(scale),
        pool=_parse_colors(pool) if pool else None,
        objective=objective,
    )
    click.echo(json.dumps([c.to_json_dict() for c in found], indent=2))
    if not found:
        sys.exit(EXIT_EMPTY)


@main.command()
@click.option("--experiment", type=click.Choice(["1", "2"]), required=True)
@click.option("--model", "acc_label", default=None)
@click.option("--rt-model", "rt_label", default=None)
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--out", required=True, type=click.Path(file_okay=False))
@_handle_errors
def report(experiment, acc_label, rt_label, dataset, out):
    """Distance files, predictions, and the assignment for one experiment."""
    exp = int(experiment)
    names, ids = experiment_palette(exp)
    acc_label = acc_label or f"Acc {exp}.2"
    rt_label = rt_label or f"RT {exp}.2"
    table = _load_table(dataset)
    sub = table.subset(list(names), ids)
    os.makedirs(out, exist_ok=True)
    rep = pairwise_report(sub)
    with open(os.path.join(out, "distances.json"), "w", encoding="utf-8") as f:
        f.write(rep.to_json())
    with open(os.path.join(out, "distances.csv"), "w", encoding="utf-8") as f:
        f.write(rep.to_csv())
    with open(os.path.join(out, "distances.svg"), "w", encoding="utf-8") as f:
        f.write(distances_svg(rep, sub.colors))
    rows = build_stimuli(sub)
    with open(os.path.join(out, "predictions.csv"), "w", encoding="utf-8") as f:
        f.write(prediction_csv(rows, acc_spec=preset(acc_label), rt_spec=preset(rt_label)))
    with open(os.path.join(out, "assignment.json"), "w", encoding="utf-8") as f:
        f.write(solve_nxn(merit_isolated(sub)).to_json())
    with open(os.path.join(out, "manifest.json"), "w", encoding="utf-8") as f:
        f.write(RunManifest(command=" ".join(sys.argv[1:])).to_json())


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8787, show_default=True)
@click.option("--ui", "ui_dir", type=click.Path(exists=True, file_okay=False), default=None,
              help="Serve a built workbench UI from this directory.")
@_handle_errors
def serve(host, port, ui_dir):
    """Run the local HTTP/JSON API (and optionally the workbench UI)."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(ui_dir=ui_dir), host=host, port=port)


if __name__ == "__main__":
    main()
