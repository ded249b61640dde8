"""Projected gradient descent for prototype placement.

Two relaxations of min_C max_{i != j} <c_i, c_j> are supported:

* ``avg``: mean over prototypes of each prototype's worst cosine, with the
  diagonal suppressed by subtracting 2 I from the Gram matrix.
* ``lse``: (1/t) log sum_{i != j} exp(t <c_i, c_j>), a smooth upper bound of
  the max whose gap shrinks as log(K(K-1))/t.

Each epoch takes a full-batch heavy-ball step (PyTorch SGD semantics:
``v <- mu v + g; C <- C - lr v``) followed by row normalisation.

By default the ``lse`` step follows the gradient of log sum exp(t <c_i, c_j>),
the smooth max scaled by t, which has the same minimisers at each fixed
temperature.  ``scale_lse_by_temperature=False`` steps on the unscaled
objective instead, whose effective step size shrinks like 1/t.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .sphere_map import Codebook, Scheme, random_vectors

log = logging.getLogger(__name__)


class Loss(str, enum.Enum):
    LSE = "lse"
    AVG = "avg"


@dataclass(frozen=True)
class OptimizerConfig:
    loss: Loss = Loss.LSE
    epochs: int = 1000
    learning_rate: float = 0.1
    momentum: float = 0.9
    t_start: float = 1.0
    t_end: float | None = None  # None -> K
    seed: int = 0
    riemannian: bool = False
    scale_lse_by_temperature: bool = True

    def __post_init__(self):
        object.__setattr__(self, "loss", Loss(self.loss))
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if not 0 <= self.momentum < 1:
            raise ValueError("momentum must lie in [0, 1)")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        for t in (self.t_start, self.t_end):
            if t is not None and not (np.isfinite(t) and t > 0):
                raise ValueError("temperature must be finite and positive")

    def temperatures(self, K: int) -> np.ndarray:
        """Per-epoch temperature, linear from t_start to t_end inclusive."""
        t_end = float(K) if self.t_end is None else self.t_end
        if self.epochs == 1:
            return np.array([self.t_start])
        return np.linspace(self.t_start, t_end, self.epochs)


@dataclass
class OptimizerTrace:
    loss: list[float] = field(default_factory=list)
    max_cosine: list[float] = field(default_factory=list)
    temperature: list[float] = field(default_factory=list)
    best_max_cosine: list[float] = field(default_factory=list)
    best_epoch: int = -1
    codebook: Codebook | None = None


def _gram(C: np.ndarray) -> np.ndarray:
    return C @ C.T


def loss_avg(C: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean per-row maximum of C C^T - 2I and its (sub)gradient.

    Ties in a row maximum go to the lowest column index.
    """
    K = C.shape[0]
    M = _gram(C) - 2.0 * np.eye(K)
    j = np.argmax(M, axis=1)
    rows = np.arange(K)
    value = float(M[rows, j].mean())
    grad = C[j] / K
    np.add.at(grad, j, C / K)
    return value, grad


def loss_lse(C: np.ndarray, t: float) -> tuple[float, np.ndarray]:
    """Smooth max over ordered pairs i != j, evaluated with a max shift.

    Summing the upper triangle and doubling it is the same as summing over
    ordered pairs; this form makes the value a direct upper bound of the max.
    """
    G = _gram(C)
    np.fill_diagonal(G, -np.inf)
    top = G.max()
    W = np.exp(t * (G - top))
    Z = W.sum()
    value = float(top + np.log(Z) / t)
    W /= Z
    grad = (W + W.T) @ C
    return value, grad


def project_rows_to_sphere(C: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(C, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ValueError("degenerate prototype: zero row cannot be projected")
    return C / norms


def _max_offdiag(C: np.ndarray) -> float:
    G = _gram(C)
    np.fill_diagonal(G, -np.inf)
    return float(G.max())


def optimize_prototypes(
    K: int,
    n: int,
    cfg: OptimizerConfig | None = None,
    callback: Callable[[int, np.ndarray], None] | None = None,
) -> tuple[Codebook, OptimizerTrace]:
    """Run projected heavy-ball descent and return the best iterate seen.

    "Best" is judged by the exact max cosine, not by the surrogate loss.
    ``callback(epoch, C)`` sees a copy of the projected iterate after each step.
    """
    cfg = cfg or OptimizerConfig()
    if K < 2 or n < 1:
        raise ValueError(f"need K >= 2 and n >= 1, got K={K}, n={n}")
    rng = np.random.default_rng(cfg.seed)
    C = random_vectors(K, n, rng)
    velocity = np.zeros_like(C)
    temps = cfg.temperatures(K)
    trace = OptimizerTrace()
    best_val, best_C = np.inf, C.copy()

    for epoch, t in enumerate(temps):
        if cfg.loss is Loss.LSE:
            value, grad = loss_lse(C, t)
            if cfg.scale_lse_by_temperature:
                grad = t * grad
        else:
            value, grad = loss_avg(C)
        if not np.isfinite(value) or not np.all(np.isfinite(grad)):
            raise FloatingPointError(f"non-finite loss at epoch {epoch}")
        cur = _max_offdiag(C)
        if cur < best_val:
            best_val, best_C, trace.best_epoch = cur, C.copy(), epoch
        trace.loss.append(value)
        trace.max_cosine.append(cur)
        trace.temperature.append(float(t))
        trace.best_max_cosine.append(best_val)

        if cfg.riemannian:
            grad = grad - np.sum(grad * C, axis=1, keepdims=True) * C
        velocity = cfg.momentum * velocity + grad
        C = project_rows_to_sphere(C - cfg.learning_rate * velocity)
        if callback is not None:
            callback(epoch, C.copy())

    final = _max_offdiag(C)
    if final < best_val:
        best_val, best_C, trace.best_epoch = final, C, len(temps)
    log.debug("optimize K=%d n=%d loss=%s best max cosine %.6f at epoch %d",
              K, n, cfg.loss.value, best_val, trace.best_epoch)

    scheme = Scheme.LSE if cfg.loss is Loss.LSE else Scheme.AVG
    trace.codebook = Codebook(
        best_C,
        scheme,
        params={
            "epochs": cfg.epochs,
            "learning_rate": cfg.learning_rate,
            "momentum": cfg.momentum,
            "t_start": cfg.t_start,
            "t_end": float(temps[-1]),
            "seed": cfg.seed,
            "riemannian": cfg.riemannian,
            "scale_lse_by_temperature": cfg.scale_lse_by_temperature,
        },
    )
    return trace.codebook, trace
