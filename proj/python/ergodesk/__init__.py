"""Spectral and spacial invariants of measure-preserving maps.

Systems, test sets and configs are plain dicts in the same JSON shape the
command-line tool reads, e.g. ``{"kind": "skew"}`` or
``{"kind": "bernoulli", "probs": [0.5, 0.5]}``.
"""

import json

from . import _ergodesk

__version__ = _ergodesk.__version__

__all__ = [
    "run_scenario",
    "spectrum",
    "tower",
    "tower_evidence",
    "residual",
    "intertwiner",
    "bernoulli_entropy",
    "correlation",
]


def _dump(x):
    return x if isinstance(x, str) else json.dumps(x)


def run_scenario(config):
    """Run a scenario; returns the report dict (status "inconclusive" when undecided)."""
    return json.loads(_ergodesk.run_scenario(_dump(config)))


def spectrum(system):
    return json.loads(_ergodesk.spectrum(_dump(system)))


def tower(system, depth=3):
    """Tower levels as generator strings, e.g. ["{0}", "<(1,0)>", ...]."""
    return _ergodesk.tower(_dump(system), depth)


def tower_evidence(system):
    return json.loads(_ergodesk.tower_evidence(_dump(system)))


def residual(system, k, window=8, grid=0, cutoff=2):
    return json.loads(_ergodesk.residual(_dump(system), k, window, grid, cutoff))


def intertwiner(a, b, truncation=16):
    return json.loads(_ergodesk.intertwiner(_dump(a), _dump(b), truncation))


def bernoulli_entropy(probs):
    """Entropy in nats."""
    return _ergodesk.bernoulli_entropy(list(probs))


def correlation(system, a, b, i, samples=0, seed=0):
    """mu(S^i A n B); closed form when samples is 0, Monte-Carlo otherwise."""
    return json.loads(_ergodesk.correlation(_dump(system), _dump(a), _dump(b), i, samples, seed))
