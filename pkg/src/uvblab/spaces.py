"""Catalog of sequence-space norms and the descriptor mini-language.

Descriptors look like ``family:key=value,key=value``::

    lp:p=2          c0          summing
    lorentz:p=1,s=0.5           (weights w_i = i**-s)
    tsirelson:theta=0.5         tp:p=2,theta=0.5

``make_oracle`` turns a descriptor into a :class:`NormOracle`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .tsirelson import DEFAULT_WINDOW_CAP, pconvex_norm, tsirelson_norm

__all__ = [
    "FAMILIES",
    "SpaceDescriptor",
    "DescriptorError",
    "parse_space",
    "norm",
    "NormOracle",
    "make_oracle",
    "oracle_for",
]

FAMILIES = ("lp", "c0", "lorentz", "tsirelson", "tp", "summing")

_ALLOWED_KEYS = {
    "lp": {"p"},
    "c0": set(),
    "lorentz": {"p", "s"},
    "tsirelson": {"theta"},
    "tp": {"p", "theta"},
    "summing": set(),
}


class DescriptorError(ValueError):
    """Malformed or out-of-range space descriptor."""


@dataclass(frozen=True)
class SpaceDescriptor:
    family: str
    p: float | None = None
    theta: float | None = None
    s: float | None = None

    def __post_init__(self):
        fam = self.family
        if fam not in FAMILIES:
            raise DescriptorError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
        if fam in ("lp", "lorentz", "tp"):
            if self.p is None:
                object.__setattr__(self, "p", 1.0 if fam == "lorentz" else None)
            if self.p is None:
                raise DescriptorError(f"{fam} needs p")
            if not math.isfinite(self.p) or self.p < 1:
                raise DescriptorError(f"p must be a finite real >= 1, got {self.p}")
        if fam in ("tsirelson", "tp"):
            if self.theta is None:
                object.__setattr__(self, "theta", 0.5)
            if not 0 < self.theta < 1:
                raise DescriptorError(f"theta must lie in (0, 1), got {self.theta}")
        if fam == "lorentz":
            if self.s is None:
                object.__setattr__(self, "s", 0.5)
            # w_1 = 1, nonincreasing, and not summable.
            if not 0 <= self.s <= 1:
                raise DescriptorError(f"lorentz weight exponent s must lie in [0, 1], got {self.s}")

    def to_text(self) -> str:
        keys = [k for k in ("p", "theta", "s") if getattr(self, k) is not None]
        if not keys:
            return self.family
        return self.family + ":" + ",".join(f"{k}={getattr(self, k):g}" for k in keys)

    def __str__(self):
        return self.to_text()


_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_space(text: str) -> SpaceDescriptor:
    """Parse a descriptor string such as ``"tp:p=2,theta=0.5"``."""
    text = text.strip()
    family, sep, rest = text.partition(":")
    family = family.strip().lower()
    if family not in FAMILIES:
        raise DescriptorError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    params: dict[str, float] = {}
    if sep:
        if not rest.strip():
            raise DescriptorError(f"empty parameter list in {text!r}")
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            key, value = key.strip(), value.strip()
            if not eq or not key:
                raise DescriptorError(f"expected key=value, got {item!r}")
            if key not in _ALLOWED_KEYS[family]:
                raise DescriptorError(f"key {key!r} not valid for {family}")
            if key in params:
                raise DescriptorError(f"duplicate key {key!r}")
            if not _NUMBER.match(value):
                raise DescriptorError(f"value {value!r} for {key} is not a real number")
            params[key] = float(value)
    return SpaceDescriptor(family, **params)


def _lp(c, p):
    a = np.abs(c)
    if p == 1:
        return float(math.fsum(a.tolist()))
    if p == 2:
        return math.sqrt(math.fsum((a * a).tolist()))
    return math.fsum((a**p).tolist()) ** (1.0 / p)


@dataclass(frozen=True)
class NormOracle:
    """A named norm on finitely supported vectors.

    ``norm`` accepts a :class:`~uvblab.vectors.FiniteVector` or any 1-d
    coefficient array.
    """

    descriptor: SpaceDescriptor
    is_1_unconditional: bool
    is_symmetric: bool
    has_exact_dual: bool
    window_cap: int = DEFAULT_WINDOW_CAP
    # ||e_i|| lies in [1/C0, C0]; every catalog space is normalized.
    semi_normalization: float = 1.0

    @property
    def name(self) -> str:
        return self.descriptor.to_text()

    def norm(self, a) -> float:
        c = np.asarray(getattr(a, "coeffs", a), dtype=float)
        d = self.descriptor
        fam = d.family
        if c.shape[0] == 0:
            return 0.0
        if fam == "lp":
            return _lp(c, d.p)
        if fam == "c0":
            return float(np.max(np.abs(c)))
        if fam == "summing":
            return float(np.max(np.abs(np.cumsum(c))))
        if fam == "lorentz":
            r = np.sort(np.abs(c))[::-1]
            w = np.arange(1, r.shape[0] + 1, dtype=float) ** (-d.s)
            return math.fsum((w * r**d.p).tolist()) ** (1.0 / d.p)
        if fam == "tsirelson":
            return tsirelson_norm(c, d.theta, window_cap=self.window_cap)
        if fam == "tp":
            return pconvex_norm(c, d.p, d.theta, window_cap=self.window_cap)
        raise AssertionError(fam)

    __call__ = norm

    def exact_dual(self, f) -> float:
        """Dual norm by the Hölder-conjugate formula (``lp`` and ``c0`` only)."""
        if not self.has_exact_dual:
            raise ValueError(f"no exact dual formula for {self.name}")
        c = np.abs(np.asarray(getattr(f, "coeffs", f), dtype=float))
        if c.shape[0] == 0:
            return 0.0
        d = self.descriptor
        if d.family == "c0":
            return float(math.fsum(c.tolist()))
        if d.p == 1:
            return float(np.max(c))
        q = d.p / (d.p - 1.0)
        if q == 2:
            return math.sqrt(math.fsum((c * c).tolist()))
        return math.fsum((c**q).tolist()) ** (1.0 / q)

    @property
    def conjugate_exponent(self) -> float:
        """``q = p/(p-1)`` for ``lp`` (``inf`` at ``p = 1``); ``1`` for ``c0``."""
        d = self.descriptor
        if d.family == "c0":
            return 1.0
        if d.p is None:
            raise ValueError(f"{self.name} has no exponent")
        return math.inf if d.p == 1 else d.p / (d.p - 1.0)


_FLAGS = {
    # family: (1-unconditional, symmetric, exact dual)
    "lp": (True, True, True),
    "c0": (True, True, True),
    "lorentz": (True, True, False),
    "tsirelson": (True, False, False),
    "tp": (True, False, False),
    "summing": (False, False, False),
}


def norm(o: NormOracle, a) -> float:
    """``o.norm(a)``, as a function."""
    return o.norm(a)


def make_oracle(descriptor: SpaceDescriptor, *, window_cap: int = DEFAULT_WINDOW_CAP) -> NormOracle:
    unc, sym, dual = _FLAGS[descriptor.family]
    return NormOracle(descriptor, unc, sym, dual, window_cap=window_cap)


def oracle_for(space) -> NormOracle:
    """Accept a descriptor string, a :class:`SpaceDescriptor` or an oracle."""
    if isinstance(space, NormOracle):
        return space
    if isinstance(space, str):
        space = parse_space(space)
    return make_oracle(space)
