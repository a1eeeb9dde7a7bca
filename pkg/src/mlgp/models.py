"""The three reference architectures and their model-level operations.

All models map a 4-point 3D shape to 8 class logits (softmax applied by the
loss or by :func:`predict`):

* ``mlp``   - Dense(12 -> 6, bias, ReLU) -> Dense(6 -> 8, bias); 134 params.
* ``mlhp``  - flatten to 12, lift to 14 -> linear(14 -> 5) -> lift to 7
              -> linear(7 -> 8), no biases; 126 params.
* ``mlgp``  - point-wise lift to 20 -> geometric(20 -> 4) -> lift to 6
              -> hypersphere(6 -> 8), no biases; 128 params.

The geometric first layer of ``mlgp`` admits an exact weight-space rigid
motion action (:func:`transform_mlgp_weights`): moving the input shape and
the weights together leaves every activation unchanged.
"""

import numpy as np

from . import _serialize
from .conformal import RigidMotion, motor_matrix_sphere
from .nn import (
    DENSE,
    GEOMETRIC,
    HYPERSPHERE,
    Layer,
    embed_input,
    forward,
    softmax,
)

MLP = "mlp"
MLHP = "mlhp"
MLGP = "mlgp"
MODEL_KINDS = (MLP, MLHP, MLGP)

DEFAULT_HIDDEN_UNITS = {MLP: 6, MLHP: 5, MLGP: 4}

CHECKPOINT_FORMAT = "mlgp-checkpoint-v1"


def build_model(kind, rng=None, hidden_units=None, hidden_activation=None):
    """Construct a fresh layer chain for ``kind``.

    With the default widths the parameter counts are exactly 134 (mlp),
    126 (mlhp), and 128 (mlgp).  ``rng=None`` gives all-zero parameters.
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    h = DEFAULT_HIDDEN_UNITS[kind] if hidden_units is None else int(hidden_units)
    if h < 1:
        raise ValueError("hidden_units must be positive")
    if kind == MLP:
        act = "relu" if hidden_activation is None else hidden_activation
        return [
            Layer(DENSE, 12, h, act, rng),
            Layer(DENSE, h, 8, "identity", rng),
        ]
    act = "identity" if hidden_activation is None else hidden_activation
    first_kind = HYPERSPHERE if kind == MLHP else GEOMETRIC
    first_in = 14 if kind == MLHP else 20
    return [
        Layer(first_kind, first_in, h, act, rng),
        Layer(HYPERSPHERE, h + 2, 8, "identity", rng),
    ]


def param_count(layers):
    return sum(layer.param_count for layer in layers)


def copy_layers(layers):
    """Deep copy of a chain (weights and biases duplicated)."""
    out = []
    for layer in layers:
        dup = Layer(layer.kind, layer.in_dim, layer.out_dim, layer.activation)
        dup.w = layer.w.copy()
        dup.b = layer.b.copy() if layer.b is not None else None
        out.append(dup)
    return out


def transform_mlgp_weights(layers, motion):
    """Apply a rigid motion to a geometric first layer, in weight space.

    Each unit's weight vector splits into four consecutive 5-blocks; every
    block is left-multiplied by the sphere-form motor matrix of ``motion``.
    Returns a new chain; later layers are copied untouched.  The transformed
    model evaluated on moved inputs reproduces the original logits, and the
    inverse motion's transform undoes this one.
    """
    if not layers or layers[0].kind != GEOMETRIC:
        raise ValueError("weight transform requires a geometric first layer")
    if not isinstance(motion, RigidMotion):
        raise TypeError("motion must be a RigidMotion")
    out = copy_layers(layers)
    first = out[0]
    mat = motor_matrix_sphere(motion)
    blocks = first.w.reshape(first.out_dim, first.in_dim // 5, 5)
    first.w = np.einsum("ij,ukj->uki", mat, blocks).reshape(first.w.shape)
    return out


def predict(layers, points, first_embedded=None):
    """Class labels and softmax probabilities for one shape or a batch.

    Argmax ties resolve to the lowest label index.
    """
    logits, _ = forward(layers, points, first_embedded)
    probs = softmax(logits)
    labels = np.argmax(probs, axis=-1)
    if probs.ndim == 1:
        return int(labels), probs
    return labels, probs


def accuracy(layers, points, labels, first_embedded=None):
    """Fraction of shapes assigned their true label, in [0, 1]."""
    predicted, _ = predict(layers, points, first_embedded)
    return float(np.mean(predicted == np.asarray(labels)))


def save_checkpoint(path, kind, layers, adam_step=0):
    """Write a model to a text checkpoint that reloads bit for bit."""
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    doc = {
        "format": CHECKPOINT_FORMAT,
        "model": kind,
        "adam_step": int(adam_step),
        "layers": [
            {
                "kind": layer.kind,
                "in_dim": layer.in_dim,
                "out_dim": layer.out_dim,
                "activation": layer.activation,
                "weights": layer.w,
                "bias": layer.b,
            }
            for layer in layers
        ],
    }
    _serialize.save(path, doc)


def load_checkpoint(path):
    """Read a checkpoint; returns ``(kind, layers, adam_step)``."""
    doc = _serialize.load(path)
    if doc.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"not a model checkpoint: {path}")
    kind = doc["model"]
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r} in {path}")
    layers = []
    for spec in doc["layers"]:
        layer = Layer(spec["kind"], spec["in_dim"], spec["out_dim"], spec["activation"])
        w = np.asarray(spec["weights"], dtype=float)
        if w.shape != layer.w.shape:
            raise ValueError(f"weight shape mismatch in {path}")
        layer.w = w
        if spec["bias"] is not None:
            b = np.asarray(spec["bias"], dtype=float)
            if layer.b is None or b.shape != layer.b.shape:
                raise ValueError(f"bias mismatch in {path}")
            layer.b = b
        layers.append(layer)
    return kind, layers, int(doc["adam_step"])
