"""Color-concept association tables and the rating noise model.

The bundled dataset is the UW-58 color set with mean association ratings
for 12 fruit concepts, plus the two 8-color experiment palettes as named
subsets.  Tables are immutable after loading; `subset` returns views with
rows/columns reordered as requested.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .color import ColorSpec, WhitePoint, D65
from .errors import ValidationError, UnknownNameError

DATA_DIR_ENV = "SEMDISC_DATA_DIR"

EXPERIMENT_CONCEPTS = {1: ("cantaloupe", "strawberry"), 2: ("mango", "watermelon")}


@dataclass(frozen=True)
class NoiseModel:
    """Per-rating standard deviation sigma(x) = scale * x * (1 - x)."""

    scale: float = 1.4

    def sigma(self, x):
        arr = np.asarray(x, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValidationError(f"mean rating outside [0, 1]: {x}")
        out = self.scale * arr * (1.0 - arr)
        return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def sigma(x, model: NoiseModel = NoiseModel()):
    return model.sigma(x)


class AssociationTable:
    """Dense concepts x colors matrix of mean association ratings in [0, 1]."""

    def __init__(self, concepts, colors, mean):
        concepts = list(concepts)
        colors = list(colors)
        mean = np.asarray(mean, dtype=float)
        if mean.shape != (len(concepts), len(colors)):
            raise ValidationError(
                f"mean matrix shape {mean.shape} does not match "
                f"{len(concepts)} concepts x {len(colors)} colors"
            )
        if len(set(concepts)) != len(concepts):
            raise ValidationError("duplicate concept names")
        ids = [c.id for c in colors]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate color ids")
        if np.any(~np.isfinite(mean)) or np.any(mean < 0.0) or np.any(mean > 1.0):
            raise ValidationError("mean ratings must be finite and within [0, 1]")
        self.concepts = concepts
        self.colors = colors
        self.mean = mean
        self.mean.setflags(write=False)
        self._concept_index = {k: i for i, k in enumerate(concepts)}
        self._color_index = {c.id: j for j, c in enumerate(colors)}

    @property
    def color_ids(self):
        return [c.id for c in self.colors]

    def concept_row(self, concept):
        return self.mean[self.concept_pos(concept)]

    def concept_pos(self, concept):
        try:
            return self._concept_index[concept]
        except KeyError:
            raise UnknownNameError(f"unknown concept: {concept!r}") from None

    def color_pos(self, color_id):
        try:
            return self._color_index[color_id]
        except KeyError:
            raise UnknownNameError(f"unknown color id: {color_id!r}") from None

    def color(self, color_id) -> ColorSpec:
        return self.colors[self.color_pos(color_id)]

    def value(self, concept, color_id) -> float:
        return float(self.mean[self.concept_pos(concept), self.color_pos(color_id)])

    def subset(self, concepts, color_ids) -> "AssociationTable":
        """New table holding the requested rows/columns in the given order."""
        if not concepts or not color_ids:
            raise ValidationError("subset requires at least one concept and one color")
        rows = [self.concept_pos(k) for k in concepts]
        cols = [self.color_pos(c) for c in color_ids]
        return AssociationTable(
            list(concepts),
            [self.colors[j] for j in cols],
            self.mean[np.ix_(rows, cols)].copy(),
        )

    def to_ratings_csv(self) -> str:
        """Canonical serialization of the rating matrix (concept-major)."""
        buf = io.StringIO()
        buf.write("concept,color_id,mean_rating\n")
        for i, k in enumerate(self.concepts):
            for j, c in enumerate(self.colors):
                buf.write(f"{k},{c.id},{float(self.mean[i, j])!r}\n")
        return buf.getvalue()

    def to_colors_csv(self) -> str:
        buf = io.StringIO()
        buf.write("color_id,L,a,b\n")
        for c in self.colors:
            L, a, b = c.lab
            buf.write(f"{c.id},{L!r},{a!r},{b!r}\n")
        return buf.getvalue()


def _read_text(source):
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    with open(source, "r", encoding="utf-8") as f:
        return f.read()


def load_colors(source, wp: WhitePoint = D65):
    """Parse a colors CSV (either `color_id,L,a,b` or `color_id,x,y,Y`)."""
    reader = csv.reader(io.StringIO(_read_text(source)))
    header = next(reader, None)
    if header is None:
        raise ValidationError("colors file is empty")
    header = [h.strip() for h in header]
    if header == ["color_id", "L", "a", "b"]:
        mode = "lab"
    elif header == ["color_id", "x", "y", "Y"]:
        mode = "xyY"
    else:
        raise ValidationError(f"unrecognized colors header: {header}")
    colors = []
    for n, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            cid = int(row[0])
            triple = tuple(float(v) for v in row[1:4])
        except (ValueError, IndexError):
            raise ValidationError(f"colors row {n}: malformed values {row}") from None
        if mode == "lab":
            colors.append(ColorSpec.from_lab(triple, id=cid, wp=wp))
        else:
            colors.append(ColorSpec.from_xyY(triple, id=cid, wp=wp))
    if not colors:
        raise ValidationError("colors file has no rows")
    return colors


def load_associations(colors_source, ratings_source, wp: WhitePoint = D65) -> AssociationTable:
    """Load and validate a dense association table from two CSV streams.

    Row/column order is preserved from the ratings file (concepts in first
    appearance order) and the colors file.
    """
    colors = load_colors(colors_source, wp=wp)
    ids = [c.id for c in colors]
    id_pos = {cid: j for j, cid in enumerate(ids)}

    reader = csv.reader(io.StringIO(_read_text(ratings_source)))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["concept", "color_id", "mean_rating"]:
        raise ValidationError(f"unrecognized ratings header: {header}")
    concepts = []
    cells = {}
    for n, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            concept, cid, rating = row[0], int(row[1]), float(row[2])
        except (ValueError, IndexError):
            raise ValidationError(f"ratings row {n}: malformed values {row}") from None
        if cid not in id_pos:
            raise ValidationError(f"ratings row {n}: unknown color id {cid}")
        if not 0.0 <= rating <= 1.0:
            raise ValidationError(f"ratings row {n}: rating {rating} outside [0, 1]")
        if concept not in cells:
            concepts.append(concept)
            cells[concept] = {}
        if cid in cells[concept]:
            raise ValidationError(f"ratings row {n}: duplicate cell ({concept}, {cid})")
        cells[concept][cid] = rating

    mean = np.empty((len(concepts), len(ids)))
    for i, k in enumerate(concepts):
        for j, cid in enumerate(ids):
            if cid not in cells[k]:
                raise ValidationError(f"missing cell ({k}, {cid})")
            mean[i, j] = cells[k][cid]
    return AssociationTable(concepts, colors, mean)


def _data_path(name):
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return os.path.join(override, name)
    return resources.files("semdisc.data") / name


def dataset_paths():
    return {
        "colors": _data_path("uw58_colors.csv"),
        "ratings": _data_path("uw58_fruit_associations.csv"),
        "experiment_colors": _data_path("experiment_colors.csv"),
    }


def load_bundled() -> AssociationTable:
    """The UW-58 fruit dataset (12 concepts x 58 colors)."""
    paths = dataset_paths()
    with open(paths["colors"], "rb") as cf, open(paths["ratings"], "rb") as rf:
        return load_associations(cf, rf)


def experiment_labels(experiment: int):
    """Label -> UW-58 id mapping for one of the two published palettes."""
    if experiment not in EXPERIMENT_CONCEPTS:
        raise ValidationError(f"unknown experiment {experiment}")
    out = {}
    with open(dataset_paths()["experiment_colors"], "r", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            if int(row["experiment"]) == experiment:
                out[row["label"]] = int(row["color_id"])
    return out


def experiment_palette(experiment: int):
    """(concept pair, ordered color ids) for Experiment 1 or 2.

    Color order follows the published axis layout: first-concept associates
    strongest to weakest, then second-concept associates weakest to strongest.
    """
    labels = experiment_labels(experiment)
    prefix_a = {1: "c", 2: "m"}[experiment]
    prefix_b = {1: "s", 2: "w"}[experiment]
    ordered = [labels[f"{prefix_a}{i}"] for i in range(1, 5)]
    ordered += [labels[f"{prefix_b}{i}"] for i in range(4, 0, -1)]
    return EXPERIMENT_CONCEPTS[experiment], ordered


def experiment_table(experiment: int, table: AssociationTable | None = None) -> AssociationTable:
    table = table if table is not None else load_bundled()
    concepts, ids = experiment_palette(experiment)
    return table.subset(list(concepts), ids)
