"""Random coefficient samplers named by a short descriptor string.

Grammar: ``kind`` or ``kind:key=value,...``; the shorthand ``kind(v)`` sets
the kind's main parameter.  Keys: ``n`` (length, default 8) for every kind,
``k`` for ``rademacher_sparse`` and ``r`` for ``geometric``.

    gaussian:n=6
    rademacher_sparse(3)          rademacher_sparse:n=8,k=3
    geometric(0.5)                geometric:n=8,r=0.9
    indicator_random:n=8
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

__all__ = ["Sampler", "SamplerError", "parse_sampler", "DEFAULT_SAMPLER"]

DEFAULT_SAMPLER = "gaussian"

_KINDS = {
    "gaussian": {"n"},
    "rademacher_sparse": {"n", "k"},
    "geometric": {"n", "r"},
    "indicator_random": {"n"},
}
_MAIN = {"rademacher_sparse": "k", "geometric": "r"}


class SamplerError(ValueError):
    pass


@dataclass(frozen=True)
class Sampler:
    kind: str
    n: int = 8
    k: int = 2
    r: float = 0.5

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise SamplerError(f"unknown sampler kind {self.kind!r}")
        if self.n < 1:
            raise SamplerError("sampler length n must be >= 1")
        if self.kind == "rademacher_sparse" and not 1 <= self.k <= self.n:
            raise SamplerError("rademacher_sparse needs 1 <= k <= n")
        if self.kind == "geometric" and not 0 < self.r <= 1:
            raise SamplerError("geometric ratio r must lie in (0, 1]")

    def with_length(self, n: int) -> "Sampler":
        return Sampler(self.kind, n, min(self.k, n), self.r)

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        """One nonzero coefficient vector of length ``n`` (last entry nonzero)."""
        n = self.n
        if self.kind == "gaussian":
            x = rng.standard_normal(n)
        elif self.kind == "rademacher_sparse":
            x = np.zeros(n)
            pos = rng.choice(n - 1, size=self.k - 1, replace=False) if n > 1 else np.zeros(0, int)
            x[pos] = rng.choice([-1.0, 1.0], size=pos.size)
            x[n - 1] = rng.choice([-1.0, 1.0])
        elif self.kind == "geometric":
            x = self.r ** np.arange(n) * rng.choice([-1.0, 1.0], size=n)
        else:
            x = (rng.random(n) < 0.5).astype(float)
            x[n - 1] = 1.0
        if x[n - 1] == 0:
            x[n - 1] = 1.0
        return x

    def to_text(self) -> str:
        params = [f"n={self.n}"]
        if self.kind == "rademacher_sparse":
            params.append(f"k={self.k}")
        if self.kind == "geometric":
            params.append(f"r={self.r:g}")
        return f"{self.kind}:{','.join(params)}"


_SHORT = re.compile(r"^(\w+)\(([^)]*)\)$")


def parse_sampler(text) -> Sampler:
    if isinstance(text, Sampler):
        return text
    text = text.strip()
    m = _SHORT.match(text)
    if m:
        kind, arg = m.group(1), m.group(2).strip()
        if kind not in _MAIN:
            raise SamplerError(f"{kind} takes no positional parameter")
        text = f"{kind}:{_MAIN[kind]}={arg}"
    kind, sep, rest = text.partition(":")
    if kind not in _KINDS:
        raise SamplerError(f"unknown sampler kind {kind!r}; expected one of {', '.join(_KINDS)}")
    params: dict = {}
    if sep:
        for item in rest.split(","):
            key, eq, value = (t.strip() for t in item.partition("="))
            if not eq or key not in _KINDS[kind]:
                raise SamplerError(f"bad sampler parameter {item!r} for {kind}")
            try:
                params[key] = float(value) if key == "r" else int(value)
            except ValueError:
                raise SamplerError(f"bad value {value!r} for {key}") from None
    if kind == "rademacher_sparse":
        params.setdefault("k", min(2, params.get("n", 8)))
    return Sampler(kind, **params)
