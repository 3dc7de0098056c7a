import numpy as np
import pytest
from scipy.integrate import solve_ivp

from twinbeam.gaussian import GaussianState


@pytest.fixture(scope="session")
def continuum_dgl():
    """Reference DGL propagation by direct integration of the moment equations.

    d mean/dz = A mean and dV/dz = A V + V A^T + alphaL P_probe, with
    A = gammaL K - (alphaL / 2) P_probe and K the two-mode squeezing generator.
    """
    K = np.array([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]], float)
    P = np.diag([1.0, 1.0, 0.0, 0.0])

    def solve(gammaL, alphaL, alpha_sq=1e6):
        A = gammaL * K - alphaL / 2 * P

        def rhs(z, y):
            m, V = y[:4], y[4:].reshape(4, 4)
            return np.concatenate([A @ m, (A @ V + V @ A.T + alphaL * P).ravel()])

        y0 = np.concatenate([[2 * np.sqrt(alpha_sq), 0, 0, 0], np.eye(4).ravel()])
        sol = solve_ivp(rhs, (0, 1), y0, rtol=1e-12, atol=1e-12 * alpha_sq, method="DOP853")
        y = sol.y[:, -1]
        return GaussianState(y[:4], y[4:].reshape(4, 4))

    return solve
