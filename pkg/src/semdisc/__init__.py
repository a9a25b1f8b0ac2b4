"""Semantic discriminability toolkit for categorical color palettes."""

from .associations import (
    AssociationTable,
    NoiseModel,
    experiment_palette,
    experiment_table,
    load_associations,
    load_bundled,
)
from .assignment import (
    AssignmentSolution,
    MeritMatrix,
    merit_balanced,
    merit_isolated,
    solve_2x2,
    solve_nxn,
)
from .color import ColorSpec, D65, WhitePoint, delta_e, lab_to_xyY, srgb_of, xyY_to_lab
from .distance import (
    PairContext,
    SemanticDistanceReport,
    pairwise_report,
    prob_positive,
    semantic_distance,
)
from .inference import (
    AssignmentDistribution,
    DiscriminabilityIndex,
    discriminability_index,
    pairwise_delta_s_via_mc,
    sample_assignment_distribution,
)
from .interpret import (
    RegressionSpec,
    StimulusRow,
    build_stimuli,
    pearson_r,
    predict_accuracy,
    predict_rt,
    preset,
    zscore,
)
from .optimizer import (
    PaletteCandidate,
    PaletteConstraints,
    enumerate_palettes,
    score_palette,
    swap_what_if,
)

__version__ = "0.1.0"
