"""Tsirelson norm on finitely supported vectors and its norming functionals.

The norm is the fixed point of

    ||x|| = max( max_i |x_i| , theta * sup sum_j ||E_j x|| )

where the sup runs over admissible families ``E_1 < ... < E_k`` with
``k <= min E_1``.  Because the unit vector basis is 1-unconditional, each
``E_j`` may be replaced by its interval hull and gaps between consecutive
intervals may be absorbed, so it suffices to search over partitions of
``[s, r]`` into at most ``s`` consecutive intervals, where ``s`` is the start
of ``E_1``.  The dynamic program below walks intervals by increasing length;
every interval it needs is strictly shorter than the one being evaluated
(a single piece equal to the whole interval contributes ``theta * ||x||`` and
can never realize the max), so the recursion closes exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .vectors import Functional

__all__ = [
    "DEFAULT_WINDOW_CAP",
    "WindowError",
    "interval_norm_table",
    "tsirelson_norm",
    "pconvex_norm",
    "NormingFunctionalSet",
    "NormingSetTooLarge",
    "generate_norming_set",
]

DEFAULT_WINDOW_CAP = 128


class WindowError(ValueError):
    """Support of the vector exceeds the configured window."""


def _check_theta(theta):
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")


@njit(cache=True)
def _interval_table(x, theta):
    n = x.shape[0]
    T = np.zeros((n, n))
    # G[k, a, r]: best sum of norms over partitions of [a, r] into at most k
    # consecutive intervals.
    G = np.zeros((n + 1, n, n))
    multi = np.zeros(n + 1)
    for a in range(n):
        T[a, a] = x[a]
        for k in range(1, n + 1):
            G[k, a, a] = x[a]
    for L in range(2, n + 1):
        for a in range(0, n - L + 1):
            r = a + L - 1
            m = 0.0
            for i in range(a, r + 1):
                if x[i] > m:
                    m = x[i]
            # multi[k]: partitions of [a, r] into 2..k pieces, first piece [a, e].
            multi[1] = 0.0
            for k in range(2, L + 1):
                b = multi[k - 1]
                for e in range(a, r):
                    v = T[a, e] + G[k - 1, e + 1, r]
                    if v > b:
                        b = v
                multi[k] = b
            # A family starting at a admits at most a+1 pieces (1-based start).
            best = multi[min(a + 1, L)]
            # Starting strictly inside, a single piece is a proper subinterval.
            for s in range(a + 1, r + 1):
                v = G[min(s + 1, r - s + 1), s, r]
                if v > best:
                    best = v
            val = max(m, theta * best)
            T[a, r] = val
            G[1, a, r] = val
            for k in range(2, n + 1):
                G[k, a, r] = max(multi[min(k, L)], val)
    return T


def interval_norm_table(x, theta: float = 0.5) -> np.ndarray:
    """Tsirelson norms of all interval restrictions of ``x``.

    Returns an ``(n, n)`` array ``T`` with ``T[a, r] = ||x * 1_[a+1, r+1]||``
    (0-based storage, 1-based positions) for ``a <= r``; entries below the
    diagonal are zero.
    """
    _check_theta(theta)
    x = np.abs(np.ascontiguousarray(x, dtype=np.float64))
    return _interval_table(x, float(theta))


def tsirelson_norm(a, theta: float = 0.5, *, window_cap: int = DEFAULT_WINDOW_CAP) -> float:
    """Tsirelson norm of a :class:`FiniteVector` (or a plain coefficient array)."""
    coeffs = np.asarray(getattr(a, "coeffs", a), dtype=float)
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        _check_theta(theta)
        return 0.0
    n = int(nz[-1]) + 1
    if n > window_cap:
        raise WindowError(f"support length {n} exceeds window cap {window_cap}")
    return float(interval_norm_table(coeffs[:n], theta)[0, n - 1])


def pconvex_norm(a, p: float, theta: float = 0.5, *, window_cap: int = DEFAULT_WINDOW_CAP) -> float:
    """Norm of the ``p``-convexified Tsirelson space: ``||(|a_i|^p)||_T ** (1/p)``."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    coeffs = np.abs(np.asarray(getattr(a, "coeffs", a), dtype=float))
    return tsirelson_norm(coeffs**p, theta, window_cap=window_cap) ** (1.0 / p)


class NormingSetTooLarge(RuntimeError):
    pass


class NormingFunctionalSet:
    """Nonnegative norming functionals of the Tsirelson norm on a window.

    The full norming set is closed under coordinatewise sign changes, so only
    the nonnegative members are stored; ``value(x)`` evaluates the max over the
    signed set as the max over stored functionals paired with ``|x|``.
    Members dominated coordinatewise by another member with the same support
    span are dropped; they never realize the max and never extend a chain
    that the dominating member cannot.
    """

    def __init__(self, generators, window, depth, theta):
        self.generators = np.asarray(generators, dtype=float).reshape(-1, window)
        self.window = int(window)
        self.depth = int(depth)
        self.theta = float(theta)

    def __len__(self):
        return self.generators.shape[0]

    @property
    def functionals(self) -> list:
        """All signed functionals; only sensible for small windows."""
        out = set()
        for g in self.generators:
            supp = np.flatnonzero(g)
            for signs in np.ndindex(*(2,) * supp.size):
                h = g.copy()
                h[supp] *= np.where(np.array(signs, dtype=int) == 1, -1.0, 1.0)
                out.add(tuple(h.tolist()))
        return sorted((Functional(h) for h in out), key=lambda f: tuple(f.padded(self.window)))

    def value(self, x) -> float:
        """Max over the signed set of ``f(x)``; a lower bound for the true norm."""
        c = np.abs(np.asarray(getattr(x, "coeffs", x), dtype=float))
        if c.shape[0] > self.window:
            if np.any(c[self.window :]):
                raise WindowError("vector support exceeds norming-set window")
            c = c[: self.window]
        v = np.zeros(self.window)
        v[: c.shape[0]] = c
        return float(np.max(self.generators @ v)) if len(self) else 0.0


def _prune_dominated(rows: np.ndarray) -> np.ndarray:
    """Drop rows dominated by another row with the same support span.

    A dominating row with the same first and last support index can stand in
    for the dominated one in every successive chain, so nothing is lost.
    """
    rows = np.unique(rows, axis=0)
    nzmask = rows != 0
    first = nzmask.argmax(axis=1)
    last = rows.shape[1] - 1 - nzmask[:, ::-1].argmax(axis=1)
    keep = np.ones(rows.shape[0], dtype=bool)
    for key in set(zip(first.tolist(), last.tolist())):
        grp = np.flatnonzero((first == key[0]) & (last == key[1]))
        if grp.size < 2:
            continue
        sub = rows[grp]
        ge = np.all(sub[:, None, :] >= sub[None, :, :], axis=2)
        # i is dropped when some other j dominates it; ties were removed by unique.
        np.fill_diagonal(ge, False)
        keep[grp[ge.any(axis=0)]] = False
    return rows[keep]


def generate_norming_set(theta: float, window: int, depth: int, *, cap: int = 200_000) -> NormingFunctionalSet:
    """Generate the Tsirelson norming functionals supported in ``{1..window}``.

    Level 0 holds ``e_i*``; level ``d+1`` adds ``theta * (f_1 + ... + f_j)`` for
    members with successive supports and ``j <= min supp f_1``.  With
    ``depth >= window`` the max over the set equals the Tsirelson norm of any
    vector supported in the window.
    """
    _check_theta(theta)
    if window < 1 or depth < 0:
        raise ValueError("window must be >= 1 and depth >= 0")
    rows = np.eye(window)
    for _ in range(depth):
        supp_min = np.array([np.flatnonzero(r)[0] for r in rows])
        supp_max = np.array([np.flatnonzero(r)[-1] for r in rows])
        new = [rows]
        # Extend chains f_1 < f_2 < ... one member at a time.  A chain stays
        # admissible while its length is <= min supp f_1 (1-based).
        chains = [(rows[i].copy(), supp_min[i] + 1, supp_max[i], 1) for i in range(len(rows))]
        total = len(rows)
        while chains:
            nxt = []
            for acc, first, last, length in chains:
                if length + 1 > first:
                    continue
                for j in np.flatnonzero(supp_min > last):
                    s = acc + rows[j]
                    nxt.append((s, first, supp_max[j], length + 1))
                    new.append(theta * s[None, :])
                    total += 1
                    if total > cap:
                        raise NormingSetTooLarge(f"norming set exceeds cap {cap}")
            chains = nxt
        combined = _prune_dominated(np.vstack(new))
        stable = set(map(tuple, combined.tolist())) == set(map(tuple, rows.tolist()))
        rows = combined
        if stable:
            break
    return NormingFunctionalSet(rows, window, depth, theta)
