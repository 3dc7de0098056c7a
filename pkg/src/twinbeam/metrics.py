"""Detected-light observables: intensity-difference noise relative to shot noise."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import CONJUGATE, PROBE, GaussianState, attenuate, beamsplitter, coherent

BRIGHT_THRESHOLD = 100.0


class DarkBeamError(ValueError):
    """Raised when the linearised photon-number metric has no bright carrier."""


@dataclass(frozen=True)
class DetectionSpec:
    """Efficiencies of the probe and conjugate detection arms."""

    eta_probe: float = 1.0
    eta_conj: float = 1.0

    def __post_init__(self):
        for name in ("eta_probe", "eta_conj"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {v}")

    @classmethod
    def balanced(cls, eta: float) -> "DetectionSpec":
        return cls(eta, eta)

    @property
    def is_balanced(self) -> bool:
        return self.eta_probe == self.eta_conj


@dataclass(frozen=True)
class SqueezingResult:
    s_linear: float
    s_db: float
    p_probe: float
    p_conj: float


def to_db(s_linear: float) -> float:
    if not s_linear > 0:
        raise ValueError(f"cannot convert non-positive noise ratio {s_linear} to dB")
    return 10.0 * np.log10(s_linear)


def from_db(s_db: float) -> float:
    return 10.0 ** (s_db / 10.0)


def bright_photon(state: GaussianState, mode: int) -> float:
    """Mean-field part ``(<x>^2 + <p>^2)/4`` of the photon number."""
    m = state.mode_mean(mode)
    return float(m @ m / 4)


def detect(state: GaussianState, det: DetectionSpec) -> GaussianState:
    state = attenuate(state, PROBE, det.eta_probe)
    return attenuate(state, CONJUGATE, det.eta_conj)


def _require_bright(state: GaussianState, *modes: int, threshold: float = BRIGHT_THRESHOLD) -> None:
    brightest = max(bright_photon(state, m) for m in modes)
    if brightest < threshold or brightest == 0:
        raise DarkBeamError(
            f"no mode among {modes} has at least {threshold:g} mean-field photons; "
            "the linearised noise metric is not valid"
        )


def difference_variance(state: GaussianState) -> float:
    """Linearised ``Var(N_probe - N_conj)``.

    Quadrature fluctuations are projected on each beam's mean-field direction, so
    the result is exact up to O(1) photon-number corrections.
    """
    if state.n_modes != 2:
        raise ValueError("intensity-difference noise needs a two-mode state")
    w = np.concatenate([state.mode_mean(PROBE), -state.mode_mean(CONJUGATE)]) / 2
    return float(w @ state.cov @ w)


def intensity_difference_squeezing(state: GaussianState, det: DetectionSpec = DetectionSpec(),
                                   bright_threshold: float = BRIGHT_THRESHOLD) -> SqueezingResult:
    """Intensity-difference noise of the detected twin beams relative to the SNL.

    The shot-noise limit is the total detected mean-field photon number, so a
    coherent state gives exactly 1 for any detection efficiencies. Lowering
    ``bright_threshold`` is only meant for comparisons against exact photon
    statistics.
    """
    if state.n_modes != 2:
        raise ValueError("intensity-difference noise needs a two-mode state")
    _require_bright(state, PROBE, CONJUGATE, threshold=bright_threshold)
    out = detect(state, det)
    p_a, p_b = bright_photon(out, PROBE), bright_photon(out, CONJUGATE)
    s = difference_variance(out) / (p_a + p_b)
    return SqueezingResult(s, to_db(s), p_a, p_b)


def single_beam_noise(state: GaussianState, mode: int, det: DetectionSpec = DetectionSpec()) -> float:
    """Intensity noise of one detected beam relative to its own shot noise.

    This is the amplitude-quadrature variance along the beam's mean-field direction.
    """
    _require_bright(state, mode)
    out = detect(state, det)
    u = out.mode_mean(mode)
    u = u / np.linalg.norm(u)
    return float(u @ out.mode_cov(mode) @ u)


def snl_curve(powers) -> list[tuple[float, float]]:
    """Balanced-detection difference noise of coherent light versus total power.

    Each power (mean photon number) is split on a 50/50 beamsplitter and the
    difference-photocurrent noise of the two outputs is returned.
    """
    rows = []
    for P in powers:
        if P < 0:
            raise ValueError(f"optical power must be non-negative, got {P}")
        state = beamsplitter(coherent(2, PROBE, np.sqrt(P)), np.pi / 4)
        rows.append((float(P), difference_variance(state)))
    return rows
