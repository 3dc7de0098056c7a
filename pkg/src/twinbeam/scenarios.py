"""Named reproductions of the reported operating points and model numbers."""
from __future__ import annotations

import numpy as np

from .analysis import Model, optimal_gain
from .media import bs_model_squeezing, dgl_model_squeezing, fit_from_outputs, medium_squeezing
from .metrics import snl_curve, to_db


def fig2():
    g, t, eta = 1.7, 0.17, 0.5
    return [
        ("gain g", g, None),
        ("probe transmission t", t, None),
        ("detection efficiency", eta, None),
        ("DGL squeezing [dB]", to_db(dgl_model_squeezing(g, t, eta)), "-1.10 +- 0.27 (measured)"),
        ("BS squeezing [dB]", to_db(bs_model_squeezing(g, t, eta)), None),
    ]


def _ideal(t, g_reported, s_reported):
    opt = optimal_gain(t, 1.0, Model.DGL)
    return [
        ("probe transmission t", t, None),
        ("detection efficiency", 1.0, None),
        ("optimal gain", opt.g, g_reported),
        ("squeezing at optimum [dB]", opt.s_db, s_reported),
        ("optimum at g_max", opt.at_boundary, None),
    ]


def ideal15():
    return _ideal(0.15, 2.0, -3.4)


def ideal40():
    return _ideal(0.40, 3.8, -6.4)


def transparent():
    fit = fit_from_outputs(0.56, 0.47)
    s = medium_squeezing(fit.medium, 0.5)
    return [
        ("normalised probe output", 0.56, None),
        ("normalised conjugate output", 0.47, None),
        ("fitted gain g", fit.g, None),
        ("fitted probe transmission t", fit.t, None),
        ("overall gain", fit.overall_gain, "1.03 +- 0.06"),
        ("DGL squeezing at eta=0.5 [dB]", to_db(s), "-0.84 +- 0.16 (measured)"),
    ]


def snl():
    powers = np.logspace(1, 6, 11)
    P, noise = np.array(snl_curve(powers)).T
    slope, intercept = np.polyfit(P, noise, 1)
    residual = np.max(np.abs(noise - slope * P) / noise)
    return [
        ("powers", f"{P[0]:g} .. {P[-1]:g} ({P.size} points)", None),
        ("fitted slope", slope, "linear"),
        ("fitted intercept", intercept, "0"),
        ("max relative residual (through origin)", residual, None),
    ]


SCENARIOS = {
    "fig2": fig2,
    "ideal15": ideal15,
    "ideal40": ideal40,
    "transparent": transparent,
    "snl": snl,
}


def run_scenario(name):
    """Return ``(label, model value, reported value or None)`` rows for ``name``."""
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; available: {', '.join(SCENARIOS)}") from None
