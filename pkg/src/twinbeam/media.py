"""Two models of seeded four-wave mixing with probe absorption.

* Beamsplitter (BS) model: an ideal two-mode squeezer followed by lumped losses.
  Its intensity-difference noise has a closed form (:func:`bs_model_squeezing`).
* Distributed gain/loss (DGL) model: gain and probe absorption act together along
  the medium. The medium is cut into thin slices, each a symmetric (Strang)
  product of half a probe loss, a two-mode squeeze and another half loss.

Gain conventions
----------------
The DGL medium is described by an integrated gain ``gammaL`` and an integrated
probe absorption ``alphaL``. Two ways of quoting the gain ``g`` are supported:

``"intrinsic"`` (default)
    ``g = cosh(gammaL)**2``, the gain the same medium would show with absorption
    switched off. This is the gain of the ideal squeezer in the BS model.
``"operational"``
    ``g = 1 + P_conj / P_in``, i.e. one plus the measured conjugate gain of the
    absorbing medium, found by inverting the forward model.

Both coincide when ``t = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .gaussian import (
    CONJUGATE,
    PROBE,
    GaussianState,
    apply_channel,
    channel_power,
    compose_channels,
    displace,
    loss_channel,
    two_mode_squeeze_matrix,
    vacuum,
)
from .metrics import DetectionSpec, intensity_difference_squeezing

INTRINSIC = "intrinsic"
OPERATIONAL = "operational"
GAIN_CONVENTIONS = (INTRINSIC, OPERATIONAL)

DEFAULT_SLICES = 2000
MAX_SLICES = 2**22
SLICE_TOL = 1e-6
DEFAULT_ALPHA_SQ = 1e6
CALIBRATION_TOL = 1e-9


class ConvergenceError(RuntimeError):
    """A root-finder or the slice integrator failed to reach its tolerance."""


class InfeasibleError(ValueError):
    """No medium reproduces the requested observables."""


@dataclass(frozen=True)
class MediumParams:
    """Integrated gain ``gammaL`` and integrated probe absorption ``alphaL``."""

    gammaL: float
    alphaL: float

    def __post_init__(self):
        if not (self.gammaL >= 0 and self.alphaL >= 0):
            raise ValueError(f"medium parameters must be non-negative, got {self}")

    @property
    def transmission(self) -> float:
        """Probe transmission with the pump off."""
        return float(np.exp(-self.alphaL))

    @property
    def intrinsic_gain(self) -> float:
        return float(np.cosh(self.gammaL) ** 2)


@dataclass(frozen=True)
class OutputFit:
    """Operating point inferred from normalised output powers."""

    g: float
    t: float
    overall_gain: float
    medium: MediumParams


def _check_operating_point(g, t, eta=1.0):
    if not g >= 1:
        raise ValueError(f"gain must be >= 1, got {g}")
    if not 0 < t <= 1:
        raise ValueError(f"probe transmission must lie in (0, 1], got {t}")
    if not 0 < eta <= 1:
        raise ValueError(f"detection efficiency must lie in (0, 1], got {eta}")


def _check_convention(convention):
    if convention not in GAIN_CONVENTIONS:
        raise ValueError(f"unknown gain convention {convention!r}; expected one of {GAIN_CONVENTIONS}")


def bs_model_squeezing(g: float, t: float, eta_b: float) -> float:
    """Intensity-difference noise of ideal gain ``g`` followed by lumped losses.

    The conjugate arm is detected with efficiency ``eta_b`` and the probe arm with
    ``t * eta_b``. Values below 1 indicate squeezing.
    """
    _check_operating_point(g, t, eta_b)
    denom = g * (t + 1) - 1
    if denom <= 0:
        raise ValueError("g (t + 1) - 1 must be positive")
    return 1 + eta_b * 2 * (g - 1) * (g * (t - 1) ** 2 - 1) / denom


def pure_gain_squeezing(g: float, eta: float) -> float:
    """Lossless-medium squeezing ``1 - eta + eta / (2g - 1)`` with balanced detection."""
    _check_operating_point(g, 1.0, eta)
    return 1 - eta + eta / (2 * g - 1)


def slice_channel(medium: MediumParams, slices: int, n_modes: int = 2):
    """Gaussian channel ``(X, Y)`` of one Strang slice of the DGL medium."""
    half_loss = loss_channel(np.exp(-medium.alphaL / (2 * slices)), n_modes, PROBE)
    squeeze = (two_mode_squeeze_matrix(medium.gammaL / slices, n_modes), np.zeros((2 * n_modes, 2 * n_modes)))
    return compose_channels(compose_channels(half_loss, squeeze), half_loss)


def dgl_channel(medium: MediumParams, slices: int, n_modes: int = 2):
    if slices < 1:
        raise ValueError("number of slices must be at least 1")
    return channel_power(slice_channel(medium, slices, n_modes), slices)


def propagate_dgl(state: GaussianState, medium: MediumParams, slices: int = DEFAULT_SLICES) -> GaussianState:
    """Propagate ``state`` through the sliced gain/absorption medium.

    The conjugate (mode 2) suffers no absorption. The ``slices`` identical slices
    are composed by repeated squaring, which is algebraically the same as applying
    them one after another. The splitting error decreases as ``1/slices**2``.
    """
    if state.n_modes < 2:
        raise ValueError("DGL propagation needs at least two modes")
    return apply_channel(state, *dgl_channel(medium, slices, state.n_modes))


def mean_field_gains(medium: MediumParams, slices: int = DEFAULT_SLICES) -> tuple[float, float]:
    """Output powers of probe and conjugate per unit seed power.

    Means evolve independently of the noise, so these do not depend on seed size.
    """
    X, _ = dgl_channel(medium, slices)
    return float(X[0, 0] ** 2), float(X[2, 0] ** 2)


def calibrate_dgl(g: float, t: float, slices: int = DEFAULT_SLICES, convention: str = INTRINSIC) -> MediumParams:
    """Medium parameters reproducing gain ``g`` and pump-off transmission ``t``.

    ``alphaL = -ln t`` in both conventions. For the operational convention,
    ``gammaL`` is the root of ``conjugate gain(gammaL) = g - 1`` under the sliced
    forward model, found to ``|delta g| <= 1e-9``.
    """
    _check_operating_point(g, t)
    _check_convention(convention)
    alphaL = max(0.0, -float(np.log(t)))
    if g == 1:
        return MediumParams(0.0, alphaL)
    if convention == INTRINSIC:
        return MediumParams(float(np.arccosh(np.sqrt(g))), alphaL)

    def excess(gammaL):
        return mean_field_gains(MediumParams(gammaL, alphaL), slices)[1] - (g - 1)

    hi = 1.0
    while excess(hi) < 0:
        hi *= 2
        if hi > 200:
            raise ConvergenceError(f"could not bracket the gain for g={g}, t={t}")
    gammaL, info = brentq(excess, 0.0, hi, xtol=1e-15, full_output=True, maxiter=200)
    if not info.converged or abs(excess(gammaL)) > CALIBRATION_TOL:
        raise ConvergenceError(f"gain calibration did not converge for g={g}, t={t}")
    return MediumParams(float(gammaL), alphaL)


def seeded_state(alpha_sq: float = DEFAULT_ALPHA_SQ) -> GaussianState:
    """Probe in a real coherent state with ``alpha_sq`` photons, conjugate in vacuum."""
    if not alpha_sq > 0:
        raise ValueError("seed photon number must be positive")
    return displace(vacuum(2), PROBE, 2 * np.sqrt(alpha_sq), 0.0)


def medium_squeezing(medium: MediumParams, eta: float, slices: int = DEFAULT_SLICES,
                     alpha_sq: float = DEFAULT_ALPHA_SQ) -> float:
    """Detected intensity-difference noise for a given medium and balanced efficiency."""
    out = propagate_dgl(seeded_state(alpha_sq), medium, slices)
    return intensity_difference_squeezing(out, DetectionSpec.balanced(eta)).s_linear


def dgl_model_squeezing(g: float, t: float, eta: float, slices: int | None = None,
                        alpha_sq: float = DEFAULT_ALPHA_SQ, convention: str = INTRINSIC) -> float:
    """Intensity-difference noise predicted by the distributed gain/loss model.

    Pipeline: seeded probe, calibration to ``(g, t)``, sliced propagation, balanced
    detection with efficiency ``eta``. With ``slices=None`` the slice count starts at
    :data:`DEFAULT_SLICES` and doubles until successive results differ by less
    than :data:`SLICE_TOL`.
    """
    _check_operating_point(g, t, eta)
    if slices is not None:
        return medium_squeezing(calibrate_dgl(g, t, slices, convention), eta, slices, alpha_sq)

    n = DEFAULT_SLICES
    prev = medium_squeezing(calibrate_dgl(g, t, n, convention), eta, n, alpha_sq)
    while n < MAX_SLICES:
        n *= 2
        s = medium_squeezing(calibrate_dgl(g, t, n, convention), eta, n, alpha_sq)
        if abs(s - prev) < SLICE_TOL:
            return s
        prev = s
    raise ConvergenceError(f"slice integration did not converge for g={g}, t={t}")


def fit_from_outputs(probe_out_norm: float, conj_out_norm: float, slices: int = DEFAULT_SLICES) -> OutputFit:
    """Infer ``(g, t)`` from probe and conjugate output powers normalised to the seed.

    The gain follows the operational convention ``g = 1 + conj_out_norm``. The
    transmission is the root, in ``(0, 1]``, of the forward model's probe output.
    """
    if not probe_out_norm > 0:
        raise ValueError("normalised probe output must be positive")
    if not conj_out_norm >= 0:
        raise ValueError("normalised conjugate output must be non-negative")
    g = 1.0 + conj_out_norm
    overall = float(probe_out_norm + conj_out_norm)

    def probe_excess(t):
        medium = calibrate_dgl(g, t, slices, OPERATIONAL)
        return mean_field_gains(medium, slices)[0] - probe_out_norm

    top = probe_excess(1.0)
    if abs(top) <= CALIBRATION_TOL:
        return OutputFit(g, 1.0, overall, calibrate_dgl(g, 1.0, slices, OPERATIONAL))
    if top < 0:
        raise InfeasibleError(
            f"probe output {probe_out_norm} exceeds the lossless value {g} for conjugate output {conj_out_norm}"
        )
    lo = 0.5
    while probe_excess(lo) > 0:
        lo /= 2
        if lo < 1e-6:
            raise InfeasibleError(f"no transmission in (0, 1] reproduces probe output {probe_out_norm}")
    t = brentq(probe_excess, lo, 1.0, xtol=1e-14)
    if abs(probe_excess(t)) > CALIBRATION_TOL:
        raise ConvergenceError("transmission fit did not converge")
    return OutputFit(g, float(t), overall, calibrate_dgl(g, t, slices, OPERATIONAL))
