"""Small feed-forward sigmoid network for binary classification.

The parameter vector is the flattened concatenation of each layer's weight
matrix (fan_in x fan_out, row-major) followed by its bias vector, so the
whole network doubles as a search point for the swarm optimizers. Training
modes: pure swarm search over the flattened parameters, pure full-batch
gradient descent, or swarm search followed by gradient refinement.
"""

import json
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import optimizer
from .errors import ConfigError, DataError
from .optimizer import GwoConfig, SearchSpace

# Predicted probabilities are clipped to [BCE_CLIP, 1 - BCE_CLIP] inside the
# loss; samples pushed outside that band carry zero gradient.
BCE_CLIP = 1e-12


@dataclass(frozen=True)
class MlpArchitecture:
    """Layer sizes from input to the single sigmoid output unit."""

    layer_sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.layer_sizes)
        object.__setattr__(self, "layer_sizes", sizes)
        if len(sizes) < 2:
            raise ConfigError("architecture needs at least input and output layers")
        if any(s < 1 for s in sizes):
            raise ConfigError(f"layer sizes must be positive, got {sizes}")
        if sizes[-1] != 1:
            raise ConfigError(f"output layer must have size 1, got {sizes[-1]}")

    @property
    def n_params(self) -> int:
        return sum(
            fan_in * fan_out + fan_out
            for fan_in, fan_out in zip(self.layer_sizes, self.layer_sizes[1:])
        )


@dataclass
class TrainReport:
    final_params: np.ndarray
    loss_history: np.ndarray
    mode: str


def _stable_sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def unflatten(arch: MlpArchitecture, params) -> list:
    """Parameter vector back into per-layer (weights, bias) pairs."""
    params = np.asarray(params, dtype=float)
    if params.shape != (arch.n_params,):
        raise ValueError(
            f"expected {arch.n_params} parameters for {arch.layer_sizes}, "
            f"got shape {params.shape}"
        )
    layers = []
    offset = 0
    for fan_in, fan_out in zip(arch.layer_sizes, arch.layer_sizes[1:]):
        w = params[offset:offset + fan_in * fan_out].reshape(fan_in, fan_out)
        offset += fan_in * fan_out
        b = params[offset:offset + fan_out]
        offset += fan_out
        layers.append((w, b))
    return layers


def flatten(layers) -> np.ndarray:
    """Inverse of :func:`unflatten`; exact round trip."""
    return np.concatenate([np.concatenate([w.ravel(), b]) for w, b in layers])


def _forward_activations(arch: MlpArchitecture, params, X: np.ndarray) -> list:
    activations = [X]
    for w, b in unflatten(arch, params):
        activations.append(_stable_sigmoid(activations[-1] @ w + b))
    return activations


def forward_batch(arch: MlpArchitecture, params, X) -> np.ndarray:
    """Predicted probabilities for every row of X, strictly inside (0, 1)."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != arch.layer_sizes[0]:
        raise ValueError(
            f"expected a matrix with {arch.layer_sizes[0]} columns, got {X.shape}"
        )
    p = _forward_activations(arch, params, X)[-1][:, 0]
    # Saturated units can round to exactly 0 or 1 in float; pull them back
    # to the nearest representable interior value.
    return np.clip(p, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))


def forward(arch: MlpArchitecture, params, x) -> float:
    """Predicted probability for a single feature vector."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != arch.layer_sizes[0]:
        raise ValueError(
            f"expected a vector of length {arch.layer_sizes[0]}, got shape {x.shape}"
        )
    return float(forward_batch(arch, params, x[None, :])[0])


def bce_loss(arch: MlpArchitecture, params, X, y) -> float:
    """Mean binary cross-entropy with clipped probabilities."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.shape[0] == 0:
        raise ValueError("empty dataset")
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"{X.shape[0]} rows but {y.shape[0]} labels")
    p = np.clip(forward_batch(arch, params, X), BCE_CLIP, 1.0 - BCE_CLIP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def backward(arch: MlpArchitecture, params, X, y) -> np.ndarray:
    """Exact gradient of :func:`bce_loss` in the flattened layout."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.shape[0] == 0:
        raise ValueError("empty dataset")
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"{X.shape[0]} rows but {y.shape[0]} labels")
    layers = unflatten(arch, params)
    activations = _forward_activations(arch, params, X)
    p = activations[-1][:, 0]

    n = X.shape[0]
    # d(loss)/d(z_out); clipped samples sit on the flat part of the loss.
    delta = (p - y) / n
    delta[(p <= BCE_CLIP) | (p >= 1.0 - BCE_CLIP)] = 0.0
    delta = delta[:, None]

    grads = [None] * len(layers)
    for layer in range(len(layers) - 1, -1, -1):
        a_prev = activations[layer]
        grads[layer] = (a_prev.T @ delta, delta.sum(axis=0))
        if layer > 0:
            w, _ = layers[layer]
            delta = (delta @ w.T) * a_prev * (1.0 - a_prev)
    return flatten(grads)


def predict(arch: MlpArchitecture, params, X, threshold: float = 0.5) -> np.ndarray:
    """Binary labels: 1 wherever the predicted probability >= threshold."""
    if not 0 < threshold < 1:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    return (forward_batch(arch, params, X) >= threshold).astype(int)


def init_params(arch: MlpArchitecture, seed: int) -> np.ndarray:
    """Uniform Glorot initialization of the flattened parameter vector."""
    rng = np.random.default_rng(seed)
    layers = []
    for fan_in, fan_out in zip(arch.layer_sizes, arch.layer_sizes[1:]):
        span = math.sqrt(6.0 / (fan_in + fan_out))
        w = rng.uniform(-span, span, size=(fan_in, fan_out))
        layers.append((w, np.zeros(fan_out)))
    return flatten(layers)


def train_acgwo(arch: MlpArchitecture, X, y, cfg: GwoConfig,
                bounds: Tuple[float, float] = (-5.0, 5.0)) -> TrainReport:
    """Swarm-search the flattened parameters, minimizing the training loss."""
    lo, hi = bounds
    space = SearchSpace.uniform(arch.n_params, lo, hi)
    objective = lambda v, rng: bce_loss(arch, v, X, y)
    result = optimizer.run(objective, space, cfg)
    return TrainReport(
        final_params=result.best_position,
        loss_history=result.history,
        mode="acgwo",
    )


def train_bp(arch: MlpArchitecture, X, y, epochs: int, learning_rate: float,
             seed: int = 0, start_params=None) -> TrainReport:
    """Full-batch gradient descent from a Glorot init (or given start)."""
    if epochs < 0:
        raise ConfigError(f"epochs must be >= 0, got {epochs}")
    params = (np.asarray(start_params, dtype=float).copy()
              if start_params is not None else init_params(arch, seed))
    losses = np.empty(epochs)
    for epoch in range(epochs):
        params = params - learning_rate * backward(arch, params, X, y)
        losses[epoch] = bce_loss(arch, params, X, y)
    return TrainReport(final_params=params, loss_history=losses, mode="bp")


def train_hybrid(arch: MlpArchitecture, X, y, cfg: GwoConfig,
                 bounds: Tuple[float, float] = (-5.0, 5.0),
                 bp_epochs: int = 200, learning_rate: float = 1e-3) -> TrainReport:
    """Swarm search first, then gradient refinement from the best solution.

    The loss history concatenates both phases; with ``bp_epochs = 0`` the
    result carries exactly the swarm phase's parameters and history.
    """
    if bp_epochs < 0:
        raise ConfigError(f"bp_epochs must be >= 0, got {bp_epochs}")
    swarm = train_acgwo(arch, X, y, cfg, bounds)
    refined = train_bp(arch, X, y, bp_epochs, learning_rate,
                       start_params=swarm.final_params)
    return TrainReport(
        final_params=refined.final_params,
        loss_history=np.concatenate([swarm.loss_history, refined.loss_history]),
        mode="hybrid",
    )


@dataclass
class TrainedModel:
    """Persistable model: architecture, parameters, and the exact context
    (scaler statistics, decision threshold, split recipe) needed to evaluate
    it on the same data split later."""

    layer_sizes: Tuple[int, ...]
    params: np.ndarray
    scaler_mean: np.ndarray
    scaler_std: np.ndarray
    threshold: float
    split_seed: int
    train_fraction: float
    impute: bool
    mode: str

    @property
    def architecture(self) -> MlpArchitecture:
        return MlpArchitecture(self.layer_sizes)


def model_to_json(model: TrainedModel) -> str:
    payload = {
        "layer_sizes": list(model.layer_sizes),
        "params": [float(v) for v in model.params],
        "scaler_mean": [float(v) for v in model.scaler_mean],
        "scaler_std": [float(v) for v in model.scaler_std],
        "threshold": model.threshold,
        "split_seed": model.split_seed,
        "train_fraction": model.train_fraction,
        "impute": model.impute,
        "mode": model.mode,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def model_from_json(text: str, source: str = "model") -> TrainedModel:
    try:
        payload = json.loads(text)
        model = TrainedModel(
            layer_sizes=tuple(int(v) for v in payload["layer_sizes"]),
            params=np.asarray(payload["params"], dtype=float),
            scaler_mean=np.asarray(payload["scaler_mean"], dtype=float),
            scaler_std=np.asarray(payload["scaler_std"], dtype=float),
            threshold=float(payload["threshold"]),
            split_seed=int(payload["split_seed"]),
            train_fraction=float(payload["train_fraction"]),
            impute=bool(payload["impute"]),
            mode=str(payload["mode"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise DataError(f"{source}: cannot parse model file: {exc}") from exc
    arch = model.architecture
    if model.params.shape != (arch.n_params,):
        raise DataError(
            f"{source}: parameter vector has {model.params.size} entries "
            f"but layer sizes {model.layer_sizes} need {arch.n_params}"
        )
    return model
