"""
Gaussian states: squeeze, lose, detect
======================================

The engine tracks quadrature means and the covariance matrix (vacuum = identity).
"""

# %%
import numpy as np

from twinbeam import (
    CONJUGATE,
    PROBE,
    DetectionSpec,
    attenuate,
    coherent,
    intensity_difference_squeezing,
    mean_photon,
    single_beam_noise,
    symplectic_eigenvalues,
    two_mode_squeeze,
)

# %%
# Seed the probe with a bright coherent state and amplify it with gain G = 2.
seed = coherent(2, PROBE, 1000.0)
state = two_mode_squeeze(seed, np.arccosh(np.sqrt(2.0)))
print("probe photons:", mean_photon(state, PROBE))
print("conjugate photons:", mean_photon(state, CONJUGATE))
print("symplectic eigenvalues (pure):", symplectic_eigenvalues(state))

# %%
# The intensity difference is squeezed to 1/(2G - 1) while each beam alone
# carries excess noise 2G - 1.
res = intensity_difference_squeezing(state)
print(f"difference noise: {res.s_linear:.4f} ({res.s_db:.2f} dB)")
print("single-beam noise:", single_beam_noise(state, PROBE))

# %%
# Losses mix in vacuum. Balanced detection at 50 % halves the squeezing in
# linear units.
res = intensity_difference_squeezing(state, DetectionSpec.balanced(0.5))
print(f"with eta = 0.5: {res.s_linear:.4f} ({res.s_db:.2f} dB)")
lossy = attenuate(state, PROBE, 0.3)
print("symplectic eigenvalues after probe loss:", symplectic_eigenvalues(lossy))
