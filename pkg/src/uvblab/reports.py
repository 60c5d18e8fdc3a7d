"""Report records for estimated constants and the witness replay registry."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["ConstantReport", "register_replay", "replay_witness", "jsonable"]

_REPLAY: dict = {}


def register_replay(name):
    """Register ``fn(oracle, **inputs) -> ratio`` for witnesses of constant ``name``."""

    def deco(fn):
        _REPLAY[name] = fn
        return fn

    return deco


def replay_witness(name, oracle, witness) -> float:
    return _REPLAY[name](oracle, **witness["inputs"])


def jsonable(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats for JSON."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


@dataclass
class ConstantReport:
    """Empirical evidence for a sup-type constant.

    ``certified_lower`` is the largest ratio actually witnessed; each entry
    of ``witnesses`` holds the inputs that reproduce a ratio.  ``estimate``
    is never below ``certified_lower``.
    """

    name: str
    certified_lower: float
    estimate: float
    witnesses: list = field(default_factory=list)
    samples: int = 0
    seed: int | None = None
    notes: str = ""

    def __post_init__(self):
        if self.estimate < self.certified_lower:
            self.estimate = self.certified_lower

    @classmethod
    def from_ratios(cls, name, ratios, *, seed=None, keep=3, notes=""):
        """Build from ``(ratio, inputs)`` pairs; keeps the ``keep`` largest as witnesses."""
        ratios = [(float(r), inp) for r, inp in ratios if math.isfinite(r)]
        if not ratios:
            return cls(name, math.nan, math.nan, [], 0, seed, notes)
        ratios.sort(key=lambda t: -t[0])
        best = ratios[0][0]
        wit = [{"ratio": r, "inputs": inp} for r, inp in ratios[:keep]]
        return cls(name, best, best, wit, len(ratios), seed, notes)

    def replay(self, oracle, tol=1e-9) -> bool:
        """Re-evaluate every witness; True when all reproduce their ratios."""
        for w in self.witnesses:
            r = replay_witness(self.name, oracle, w)
            if not abs(r - w["ratio"]) <= tol * max(1.0, abs(w["ratio"])):
                return False
        return True

    def as_dict(self):
        return jsonable({
            "name": self.name,
            "certified_lower": self.certified_lower,
            "estimate": self.estimate,
            "samples": self.samples,
            "seed": self.seed,
            "notes": self.notes,
            "witnesses": self.witnesses,
        })
