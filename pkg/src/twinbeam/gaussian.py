"""Gaussian states of a few bosonic modes.

Conventions used throughout the package:

* quadratures are interleaved, ``(x1, p1, x2, p2, ...)``;
* ``x = a + a^\\dagger``, so the vacuum covariance matrix is the identity;
* modes are addressed with 1-based indices; mode 1 is the probe and mode 2 the
  conjugate (see :data:`PROBE`, :data:`CONJUGATE`).

Every operation returns a new :class:`GaussianState`; inputs are never mutated.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PROBE = 1
CONJUGATE = 2

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class GaussianState:
    """Mean vector and covariance matrix of ``n_modes`` bosonic modes."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2 or mean.size == 0:
            raise ValueError("mean must be a non-empty vector of even length")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(f"cov must have shape {(mean.size, mean.size)}, got {cov.shape}")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def mode_mean(self, mode: int) -> np.ndarray:
        i = _offset(self, mode)
        return self.mean[i : i + 2]

    def mode_cov(self, mode: int) -> np.ndarray:
        i = _offset(self, mode)
        return self.cov[i : i + 2, i : i + 2]


def _offset(state: GaussianState, mode: int) -> int:
    if isinstance(mode, bool) or not isinstance(mode, (int, np.integer)):
        raise TypeError(f"mode index must be an integer, got {mode!r}")
    if not 1 <= mode <= state.n_modes:
        raise IndexError(f"mode {mode} out of range for a {state.n_modes}-mode state")
    return 2 * (mode - 1)


def _transform(state: GaussianState, S: np.ndarray, noise: np.ndarray | None = None) -> GaussianState:
    """Apply ``mean -> S mean``, ``cov -> S cov S^T + noise`` and re-symmetrise."""
    cov = S @ state.cov @ S.T
    if noise is not None:
        cov = cov + noise
    return GaussianState(S @ state.mean, 0.5 * (cov + cov.T))


def apply_channel(state: GaussianState, X: np.ndarray, Y: np.ndarray) -> GaussianState:
    """Apply the Gaussian channel ``mean -> X mean``, ``cov -> X cov X^T + Y``."""
    return _transform(state, X, Y)


def compose_channels(first: tuple[np.ndarray, np.ndarray], second: tuple[np.ndarray, np.ndarray]):
    """Channel equivalent to applying ``first`` and then ``second``."""
    X1, Y1 = first
    X2, Y2 = second
    return X2 @ X1, X2 @ Y1 @ X2.T + Y2


def channel_power(channel: tuple[np.ndarray, np.ndarray], n: int):
    """``channel`` applied ``n`` times, by repeated squaring."""
    if n < 0:
        raise ValueError("channel power must be non-negative")
    X, Y = channel
    result = (np.eye(len(X)), np.zeros_like(Y))
    square = (X, Y)
    while n:
        if n & 1:
            result = compose_channels(result, square)
        n >>= 1
        if n:
            square = compose_channels(square, square)
    return result


def vacuum(n_modes: int) -> GaussianState:
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    return GaussianState(np.zeros(2 * n_modes), np.eye(2 * n_modes))


def coherent(n_modes: int, mode: int, alpha: complex) -> GaussianState:
    """Vacuum on all modes except a coherent amplitude ``alpha`` on ``mode``."""
    alpha = complex(alpha)
    return displace(vacuum(n_modes), mode, 2 * alpha.real, 2 * alpha.imag)


def displace(state: GaussianState, mode: int, amp_x: float, amp_p: float) -> GaussianState:
    """Shift the quadrature means of ``mode`` by ``(amp_x, amp_p)``.

    A coherent amplitude ``alpha`` corresponds to ``(2 Re alpha, 2 Im alpha)``.
    """
    i = _offset(state, mode)
    mean = state.mean.copy()
    mean[i] += amp_x
    mean[i + 1] += amp_p
    return GaussianState(mean, state.cov)


def two_mode_squeeze_matrix(r: float, n_modes: int = 2, modes: tuple[int, int] = (PROBE, CONJUGATE)) -> np.ndarray:
    """Symplectic matrix of the phase-0 two-mode squeezer.

    ``x_a -> cosh(r) x_a + sinh(r) x_b`` and ``p_a -> cosh(r) p_a - sinh(r) p_b``,
    symmetric under exchange of the two modes.
    """
    a, b = modes
    if a == b:
        raise ValueError("two_mode_squeeze needs two distinct modes")
    for m in modes:
        if not 1 <= m <= n_modes:
            raise IndexError(f"mode {m} out of range for a {n_modes}-mode state")
    c, s = np.cosh(r), np.sinh(r)
    S = np.eye(2 * n_modes)
    ia, ib = 2 * (a - 1), 2 * (b - 1)
    S[ia, ia] = S[ib, ib] = c
    S[ia + 1, ia + 1] = S[ib + 1, ib + 1] = c
    S[ia, ib] = S[ib, ia] = s
    S[ia + 1, ib + 1] = S[ib + 1, ia + 1] = -s
    return S


def two_mode_squeeze(state: GaussianState, r: float, modes: tuple[int, int] = (PROBE, CONJUGATE)) -> GaussianState:
    """Two-mode squeezing with real parameter ``r >= 0``.

    A coherently seeded probe is amplified by ``G = cosh(r)**2`` and the conjugate
    receives ``(G - 1)`` times the seed photon number.
    """
    if r < 0:
        raise ValueError("squeezing parameter r must be non-negative")
    return _transform(state, two_mode_squeeze_matrix(r, state.n_modes, modes))


def beamsplitter(state: GaussianState, theta: float, modes: tuple[int, int] = (PROBE, CONJUGATE)) -> GaussianState:
    """Real beamsplitter with amplitude transmission ``cos(theta)``."""
    a, b = modes
    if a == b:
        raise ValueError("beamsplitter needs two distinct modes")
    ia, ib = _offset(state, a), _offset(state, b)
    c, s = np.cos(theta), np.sin(theta)
    S = np.eye(2 * state.n_modes)
    for k in (0, 1):
        S[ia + k, ia + k] = S[ib + k, ib + k] = c
        S[ia + k, ib + k] = -s
        S[ib + k, ia + k] = s
    return _transform(state, S)


def loss_channel(tau: float, n_modes: int, mode: int) -> tuple[np.ndarray, np.ndarray]:
    """``(X, Y)`` pair of the pure-loss channel ``cov -> X cov X^T + Y``."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {tau}")
    if not 1 <= mode <= n_modes:
        raise IndexError(f"mode {mode} out of range for a {n_modes}-mode state")
    i = 2 * (mode - 1)
    X = np.eye(2 * n_modes)
    Y = np.zeros((2 * n_modes, 2 * n_modes))
    X[i, i] = X[i + 1, i + 1] = np.sqrt(tau)
    Y[i, i] = Y[i + 1, i + 1] = 1.0 - tau
    return X, Y


def attenuate(state: GaussianState, mode: int, tau: float) -> GaussianState:
    """Mix ``mode`` with vacuum on a beamsplitter of intensity transmission ``tau``."""
    _offset(state, mode)
    X, Y = loss_channel(tau, state.n_modes, mode)
    return _transform(state, X, Y)


def symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(state: GaussianState) -> np.ndarray:
    """Symplectic eigenvalues of the covariance matrix, sorted ascending.

    With vacuum variance 1, a physical state has all eigenvalues >= 1.
    """
    V = state.cov
    scale = max(1.0, np.abs(V).max())
    if np.abs(V - V.T).max() > SYMMETRY_TOL * scale:
        raise ValueError("covariance matrix is not symmetric")
    w, U = np.linalg.eigh(V)
    if w.min() <= 0:
        raise ValueError("covariance matrix is not positive definite")
    root = (U * np.sqrt(w)) @ U.T
    # root @ Omega @ root is real antisymmetric; its eigenvalues are +-i nu
    A = root @ symplectic_form(state.n_modes) @ root
    nu = np.linalg.eigvalsh(1j * A)
    return nu[state.n_modes :]


def mean_photon(state: GaussianState, mode: int) -> float:
    """Exact mean photon number ``(|<x>|^2 + |<p>|^2)/4 + (Var x + Var p - 2)/4``."""
    m = state.mode_mean(mode)
    V = state.mode_cov(mode)
    return float(m @ m / 4 + (np.trace(V) - 2) / 4)
