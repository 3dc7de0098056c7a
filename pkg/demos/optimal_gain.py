"""
Optimal gain and attainable squeezing
=====================================

With unbalanced losses the squeezing is best at a particular gain. This script
locates that gain for a range of probe transmissions with ideal detection.
"""

# %%
import numpy as np

from twinbeam import Model, optimal_gain, squeezing_threshold_gain

for t in (0.15, 0.40):
    opt = optimal_gain(t, eta=1.0, model=Model.DGL)
    print(f"t = {t:.2f}: optimal gain {opt.g:.2f}, squeezing {opt.s_db:.2f} dB")

# %%
# The optimum moves to higher gain as the probe becomes more transparent, and
# it does not depend on the detection efficiency.
for t in np.linspace(0.1, 0.6, 6):
    g = [optimal_gain(t, eta, Model.DGL).g for eta in (0.3, 1.0)]
    print(f"t = {t:.1f}: g* = {g[1]:.3f} (eta = 1), {g[0]:.3f} (eta = 0.3)")

# %%
# In the BS model, excess noise sets in above a threshold gain.
print("BS threshold at t = 0.15:", squeezing_threshold_gain(0.15, 0.5, Model.BS))
print("DGL threshold at t = 0.15, g <= 4:", squeezing_threshold_gain(0.15, 0.5, Model.DGL, g_max=4.0))
