"""Dual norms of finitely supported functionals.

``dual_norm(o, f, "exact")`` uses the Hölder-conjugate formula where one
exists.  ``dual_norm(o, f, "bracket")`` returns a :class:`DualBracket`: the
lower end is a ratio ``f(x)/||x||`` at an explicit ``x`` (so it is certified
by replaying ``x``), the upper end comes from a linear program over Tsirelson
norming functionals when they fit the budget, or otherwise from the trivial
bound ``||f||_* <= c * sum |f_i|`` valid when ``|x_i| <= c ||x||``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .spaces import NormOracle
from .tsirelson import NormingSetTooLarge, generate_norming_set

__all__ = ["DualBracket", "dual_norm", "ascent_lower_bound", "NORMING_WINDOW_LIMIT"]

# Largest window for which the Tsirelson norming set is generated on demand.
NORMING_WINDOW_LIMIT = 10
RESTARTS = 32


@dataclass
class DualBracket:
    lower: float
    upper: float
    witness: list = field(default_factory=list)
    upper_method: str = "none"

    def __post_init__(self):
        if self.lower > self.upper * (1 + 1e-9) + 1e-12:
            raise ValueError(f"inverted dual bracket [{self.lower}, {self.upper}]")

    def contains(self, value, tol=1e-9) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    def as_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "upper_method": self.upper_method,
            "witness": list(self.witness),
        }


def _coeffs(f):
    return np.asarray(getattr(f, "coeffs", f), dtype=float)


def _ratio(o, fc, x):
    nx = o.norm(x)
    if nx == 0:
        return -math.inf
    return float(math.fsum((fc * x).tolist())) / nx


def _starts(o: NormOracle, fc: np.ndarray, rng, count: int):
    n = fc.shape[0]
    sgn = np.sign(fc)
    mag = np.abs(fc)
    supp = np.flatnonzero(fc)
    out = [sgn.copy(), fc.copy()]
    exps = [1.25, 1.5, 3.0, 5.0]
    if o.descriptor.p is not None and o.descriptor.p > 1:
        exps.insert(0, o.descriptor.p / (o.descriptor.p - 1))
    for q in exps:
        out.append(sgn * mag ** (q - 1))
    peak = np.zeros(n)
    peak[np.argmax(mag)] = sgn[np.argmax(mag)]
    out.append(peak)
    # indicator-type starts on the right and left halves of the support
    for part in (supp[len(supp) // 2 :], supp[: (len(supp) + 1) // 2], supp[-1:]):
        v = np.zeros(n)
        v[part] = sgn[part]
        out.append(v)
    while len(out) < count:
        v = rng.random(n) * (fc != 0)
        out.append(sgn * v)
    return out[:count]


def _moves(n, active, orthant):
    """Search directions: coordinate moves, plus neighbour transfers when signs are free."""
    moves = []
    for i in active:
        d = np.zeros(n)
        d[i] = 1.0
        moves.append(d)
    if not orthant:
        for i in range(n - 1):
            d = np.zeros(n)
            d[i], d[i + 1] = 1.0, -1.0
            moves.append(d)
    return moves


def ascent_lower_bound(o: NormOracle, f, *, restarts: int = RESTARTS, seed: int = 0,
                       extra_starts=(), tol: float = 1e-7, max_sweeps: int = 200,
                       target: float = math.inf):
    """Maximize ``f(x)/||x||`` by pattern search from structured and random starts.

    For 1-unconditional norms the search stays on the support of ``f`` in the
    orthant sign-aligned with it; otherwise coordinates and neighbour
    transfers move freely.  Stops early once ``target`` (a known upper bound)
    is reached.  Returns ``(value, x)`` with ``value`` attained at ``x``.
    """
    fc = _coeffs(f)
    n = fc.shape[0]
    if n == 0:
        return 0.0, []
    rng = np.random.default_rng(seed)
    orthant = o.is_1_unconditional
    sgn = np.sign(fc)
    active = np.flatnonzero(fc) if orthant else np.arange(n)
    moves = _moves(n, active, orthant)
    best_val, best_x = -math.inf, None
    starts = list(extra_starts) + _starts(o, fc, rng, restarts)
    for x0 in starts[: max(restarts, len(extra_starts))]:
        x = np.asarray(x0, dtype=float).copy()
        if orthant:
            x = sgn * np.abs(x)
        val = _ratio(o, fc, x)
        if not math.isfinite(val):
            continue
        h = 0.5
        sweeps = 0
        while h > tol and sweeps < max_sweeps and val < target * (1 - 1e-12):
            sweeps += 1
            improved = False
            scale = max(np.max(np.abs(x)), 1e-12)
            for d in moves:
                for step in (h * scale, -h * scale):
                    y = x + step * (sgn * d if orthant else d)
                    if orthant:
                        y = np.where(sgn * y < 0, 0.0, y)
                    v = _ratio(o, fc, y)
                    if v > val + 1e-15:
                        x, val, improved = y, v, True
                        break
            if not improved:
                h *= 0.5
        if val > best_val:
            best_val, best_x = val, x
        if best_val >= target * (1 - 1e-12):
            break
    return best_val, best_x.tolist()


def _tsirelson_lp_upper(theta, fc):
    """Exact dual norm over the generated norming set, plus the LP maximizer."""
    n = fc.shape[0]
    G = generate_norming_set(theta, n, n)
    c = -np.abs(fc)
    res = linprog(c, A_ub=G.generators, b_ub=np.ones(len(G)), bounds=[(0, None)] * n, method="highs")
    if not res.success:
        raise RuntimeError(f"dual LP failed: {res.message}")
    return -res.fun, np.sign(fc) * res.x


def dual_norm(o: NormOracle, f, method: str = "exact", *, seed: int = 0, restarts: int = RESTARTS):
    """Norm of the functional ``f`` in the dual of ``o``.

    ``method="exact"`` returns a float and requires ``o.has_exact_dual``;
    ``method="bracket"`` returns a :class:`DualBracket`.
    """
    fc = _coeffs(f)
    if method == "exact":
        return o.exact_dual(fc)
    if method != "bracket":
        raise ValueError(f"unknown dual method {method!r}")
    if fc.shape[0] == 0:
        return DualBracket(0.0, 0.0, [], "zero")
    l1 = math.fsum(np.abs(fc).tolist())
    extra = []
    upper, upper_method = math.inf, "none"
    fam = o.descriptor.family
    if fam == "tsirelson" and fc.shape[0] <= NORMING_WINDOW_LIMIT:
        try:
            upper, x_lp = _tsirelson_lp_upper(o.descriptor.theta, fc)
            upper_method = "norming-lp"
            extra.append(x_lp)
        except NormingSetTooLarge:
            pass
    if o.has_exact_dual:
        exact = o.exact_dual(fc)
        if exact < upper:
            upper, upper_method = exact, "exact"
    # |x_i| <= ||x|| for 1-unconditional normalized bases; |x_i| <= 2||x|| for summing.
    trivial = l1 if o.is_1_unconditional else 2 * l1
    if trivial < upper:
        upper, upper_method = trivial, "l1-trivial"
    target = upper if upper_method in ("exact", "norming-lp") else math.inf
    lower, x = ascent_lower_bound(o, fc, restarts=restarts, seed=seed, extra_starts=extra, target=target)
    if upper < lower <= upper * (1 + 1e-9) + 1e-12:
        upper = lower  # LP round-off
    return DualBracket(lower, upper, x, upper_method)
