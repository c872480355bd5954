"""Scene-graph transformation engine.

Generates bias-balanced scene-change samples, evaluates predicted
transformation sequences by reconstruction, and serves samples, scores and
RL rewards over HTTP.
"""

from .__about__ import __version__
from ._kernels import BACKEND_NAME, COMPILED
from .scene import (
    Color,
    Material,
    ObjectState,
    PlaneConfig,
    Position,
    SceneGraph,
    Shape,
    Size,
    collides,
    is_visible,
    scene_valid,
)
from .transform import (
    ALL_VALUES,
    VALUE_TOKENS,
    ApplyMode,
    AtomicTransformation,
    Attribute,
    Direction,
    MoveValue,
    answer_space_size,
    apply_atomic,
    apply_sequence,
    attribute_of,
    is_order_sensitive,
    solve,
    transformation_from_tokens,
    value_from_token,
    value_token,
)
from .sampler import (
    BalanceTables,
    CountTable,
    Generator,
    GeneratorConfig,
    Sample,
    balanced_sample,
    derive_basic,
    expand_views,
    generate_sample,
    sample_scene,
    sample_transformation,
)
from .metrics import (
    AggregateReport,
    BasicScore,
    MultiScore,
    aggregate,
    eval_basic,
    eval_multi,
    order_sensitive_subset,
    random_order_eo,
    reward,
    scene_distance,
)
from .encoding import decode_value, encode_object, encode_value
from .dataset import Dataset, read_dataset, read_predictions, write_dataset, write_predictions
from .render import render_schematic
from .stats import stats_report

__all__ = [name for name in dir() if not name.startswith("_")]
