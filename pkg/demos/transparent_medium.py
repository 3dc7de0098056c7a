"""
Squeezing from an overall transparent medium
============================================

Probe and conjugate outputs of 0.56 and 0.47 times the seed power sum to an
overall gain of 1.03. Inverting the distributed gain/loss model gives the
medium that produces them and its predicted squeezing.
"""

# %%
from twinbeam import fit_from_outputs, to_db
from twinbeam.media import mean_field_gains, medium_squeezing

fit = fit_from_outputs(0.56, 0.47)
print(f"gain g = {fit.g:.3f}, probe transmission t = {fit.t:.4f}, overall gain {fit.overall_gain:.2f}")
print(f"medium: gammaL = {fit.medium.gammaL:.4f}, alphaL = {fit.medium.alphaL:.4f}")
print("forward model outputs (probe, conjugate):", mean_field_gains(fit.medium))

# %%
# Despite unit overall gain the beams remain intensity-difference squeezed.
s = medium_squeezing(fit.medium, eta=0.5)
print(f"predicted squeezing at eta = 0.5: {to_db(s):.2f} dB")
