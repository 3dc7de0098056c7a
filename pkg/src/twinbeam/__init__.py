"""Bright twin beams from seeded four-wave mixing with probe absorption.

Gaussian-state simulation of the beamsplitter-loss and distributed gain/loss
models, detection-side noise metrics, an optimisation layer over both models and
a truncated Fock-space reference simulation.
"""
from .analysis import (
    GainOptimum,
    Model,
    SweepRow,
    SweepSpec,
    model_squeezing,
    optimal_gain,
    optimal_probe_transmission_bs,
    squeezing_threshold_gain,
    sweep,
)
from .gaussian import (
    CONJUGATE,
    PROBE,
    GaussianState,
    attenuate,
    beamsplitter,
    coherent,
    displace,
    mean_photon,
    symplectic_eigenvalues,
    two_mode_squeeze,
    vacuum,
)
from .media import (
    INTRINSIC,
    OPERATIONAL,
    ConvergenceError,
    InfeasibleError,
    MediumParams,
    OutputFit,
    bs_model_squeezing,
    calibrate_dgl,
    dgl_model_squeezing,
    fit_from_outputs,
    propagate_dgl,
    pure_gain_squeezing,
)
from .metrics import (
    DarkBeamError,
    DetectionSpec,
    SqueezingResult,
    intensity_difference_squeezing,
    single_beam_noise,
    snl_curve,
    to_db,
)

__version__ = "0.1.0"
