"""Optimal gains, squeezing thresholds and parameter sweeps over both models."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .media import DEFAULT_SLICES, INTRINSIC, bs_model_squeezing, dgl_model_squeezing
from .metrics import to_db

G_MAX = 10.0
COARSE_POINTS = 64
GAIN_XTOL = 1e-4
THRESHOLD_XTOL = 1e-6


class Model(str, enum.Enum):
    BS = "bs"
    DGL = "dgl"


def model_squeezing(model, g, t, eta, slices=DEFAULT_SLICES, convention=INTRINSIC) -> float:
    """Evaluate either model at one point.

    ``eta`` is the conjugate-arm efficiency for the BS model (the probe arm then
    has ``t * eta``) and the balanced efficiency for the DGL model.
    """
    model = Model(model)
    if model is Model.BS:
        return bs_model_squeezing(g, t, eta)
    return dgl_model_squeezing(g, t, eta, slices=slices, convention=convention)


@dataclass(frozen=True)
class GainOptimum:
    g: float
    s: float
    at_boundary: bool

    @property
    def s_db(self) -> float:
        return to_db(self.s)


def _golden_refine(f, grid, values, xtol):
    i = int(np.argmin(values))
    if i == 0 or i == len(grid) - 1:
        return float(grid[i]), float(values[i]), True
    bracket = (grid[i - 1], grid[i], grid[i + 1])
    res = minimize_scalar(f, bracket=bracket, method="golden", tol=xtol / (2 * grid[i + 1]))
    return float(res.x), float(res.fun), False


def optimal_gain(t, eta=1.0, model=Model.DGL, g_max=G_MAX, slices=DEFAULT_SLICES,
                 convention=INTRINSIC) -> GainOptimum:
    """Gain in ``[1, g_max]`` that minimises the intensity-difference noise.

    A 64-point coarse scan brackets the minimum, which golden-section search then
    refines to ``|delta g| <= 1e-4``. A minimum at ``g_max`` is flagged with
    ``at_boundary`` since the true optimum lies beyond the search range.
    """
    if not 0 < t < 1:
        raise ValueError(f"an interior optimal gain needs 0 < t < 1, got {t}")
    if g_max < 1:
        raise ValueError("g_max must be >= 1")

    def f(g):
        return model_squeezing(model, min(max(g, 1.0), g_max), t, eta, slices, convention)

    grid = np.linspace(1.0, g_max, COARSE_POINTS)
    values = np.array([f(g) for g in grid])
    g_star, s_star, boundary = _golden_refine(f, grid, values, GAIN_XTOL)
    return GainOptimum(g_star, s_star, boundary)


def squeezing_threshold_gain(t, eta=1.0, model=Model.BS, g_max=G_MAX, slices=DEFAULT_SLICES,
                             convention=INTRINSIC):
    """Smallest gain above which the model predicts excess noise, or ``None``.

    For the BS model the threshold is ``1 / (1 - t)**2`` whatever ``eta``. For the
    DGL model the first upward crossing of ``S = 1`` in ``(1, g_max]`` is located
    by a scan and refined by bisection to 1e-6.
    """
    if not 0 < t <= 1:
        raise ValueError(f"probe transmission must lie in (0, 1], got {t}")
    model = Model(model)
    if model is Model.BS:
        if t == 1:
            return None
        g = 1.0 / (1.0 - t) ** 2
        return g if g <= g_max else None

    def excess(g):
        return model_squeezing(model, g, t, eta, slices, convention) - 1.0

    grid = np.linspace(1.0, g_max, 4 * COARSE_POINTS + 1)[1:]
    values = np.array([excess(g) for g in grid])
    if values[0] >= 0:
        # excess noise already at the first gain step
        return 1.0
    above = np.flatnonzero(values >= 0)
    if above.size == 0:
        return None
    k = above[0]
    return float(brentq(excess, grid[k - 1], grid[k], xtol=THRESHOLD_XTOL))


def optimal_probe_transmission_bs(g, eta_b=1.0, points=200):
    """Probe transmission minimising the BS-model noise at fixed gain.

    Returns ``(t_star, s_star)``. For ``g > 1`` the optimum is interior, with
    ``t_star < 1``.
    """
    if not g > 1:
        raise ValueError("an interior optimal transmission needs g > 1")

    def f(t):
        return bs_model_squeezing(g, min(max(t, 1e-12), 1.0), eta_b)

    grid = np.linspace(1.0 / points, 1.0, points)
    values = np.array([f(t) for t in grid])
    t_star, s_star, _ = _golden_refine(f, grid, values, 1e-9)
    return t_star, s_star


@dataclass(frozen=True)
class SweepSpec:
    """Grid over gain and probe transmission for one model."""

    model: Model
    g_start: float
    g_stop: float
    g_step: float
    t_values: tuple
    eta: float
    slices: int = DEFAULT_SLICES
    convention: str = INTRINSIC

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(self, "t_values", tuple(float(t) for t in self.t_values))
        if self.g_start < 1 or self.g_stop < self.g_start:
            raise ValueError("gain grid needs 1 <= start <= stop")
        if not self.g_step > 0:
            raise ValueError("gain step must be positive")
        if not self.t_values:
            raise ValueError("at least one transmission value is required")

    def gains(self) -> np.ndarray:
        n = int(np.floor((self.g_stop - self.g_start) / self.g_step + 1e-9)) + 1
        return self.g_start + self.g_step * np.arange(n)


class SweepRow(NamedTuple):
    model: str
    g: float
    t: float
    eta: float
    s_linear: float
    s_db: float


def sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the model on every grid point, ordered by ``t`` then ``g``."""
    rows = []
    for t in sorted(spec.t_values):
        for g in spec.gains():
            s = model_squeezing(spec.model, float(g), t, spec.eta, spec.slices, spec.convention)
            rows.append(SweepRow(spec.model.value, float(g), t, spec.eta, s, to_db(s)))
    return rows
