"""Multilayer geometric and hypersphere perceptrons for 3D point clouds.

The package turns points and hyperspheres into vectors whose dot product
measures incidence, builds small classifiers from that primitive, and
reproduces the 3D Tetris experiments: train/val/test protocol statistics,
rigid-motion weight transforms with exact activation isometry, and
decision-sphere extraction.
"""

from .conformal import (
    DegenerateSphereError,
    RigidMotion,
    classify_point,
    conformal_dot,
    embed_point,
    extract_center_radius_sq,
    motor_matrix_point,
    motor_matrix_sphere,
    point_normalize,
    random_rotation,
    random_unit_vector,
    rotation_about_axis,
    sphere_from_center_radius,
)
from .experiment import (
    IsometryReport,
    ProtocolConfig,
    ProtocolResult,
    RunRecord,
    StatRow,
    export_spheres,
    fit,
    isometry_test,
    load_records,
    load_results,
    make_test_set,
    run_protocol,
    save_records,
    save_results,
    summarize_records,
    train,
)
from .models import (
    MLGP,
    MLHP,
    MLP,
    MODEL_KINDS,
    accuracy,
    build_model,
    copy_layers,
    load_checkpoint,
    param_count,
    predict,
    save_checkpoint,
    transform_mlgp_weights,
)
from .nn import (
    Adam,
    Layer,
    backward,
    embed_pointwise,
    embed_vector,
    forward,
    softmax,
    softmax_cross_entropy,
)
from .tetris import (
    LabeledShapeSet,
    SHAPE_NAMES,
    canonical_shapes,
    load_dataset,
    make_dataset,
    sample_motion,
    save_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "Adam",
    "DegenerateSphereError",
    "IsometryReport",
    "LabeledShapeSet",
    "Layer",
    "MLGP",
    "MLHP",
    "MLP",
    "MODEL_KINDS",
    "ProtocolConfig",
    "ProtocolResult",
    "RigidMotion",
    "RunRecord",
    "SHAPE_NAMES",
    "StatRow",
    "accuracy",
    "backward",
    "build_model",
    "canonical_shapes",
    "classify_point",
    "conformal_dot",
    "copy_layers",
    "embed_point",
    "embed_pointwise",
    "embed_vector",
    "export_spheres",
    "extract_center_radius_sq",
    "fit",
    "forward",
    "isometry_test",
    "load_checkpoint",
    "load_dataset",
    "load_records",
    "load_results",
    "make_dataset",
    "make_test_set",
    "motor_matrix_point",
    "motor_matrix_sphere",
    "param_count",
    "point_normalize",
    "predict",
    "random_rotation",
    "random_unit_vector",
    "rotation_about_axis",
    "run_protocol",
    "sample_motion",
    "save_checkpoint",
    "save_dataset",
    "save_records",
    "save_results",
    "softmax",
    "softmax_cross_entropy",
    "sphere_from_center_radius",
    "summarize_records",
    "train",
    "transform_mlgp_weights",
]
