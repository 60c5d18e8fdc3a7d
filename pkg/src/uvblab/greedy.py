"""Fundamental functions, democracy, sign averages and the quasi-greedy constant.

Every sup over finite sets of positive integers is taken over a window
``{1..N}``, so reported values are lower bounds for the sup over all of
the positive integers unless the space is symmetric (then ``lambda(A)``
depends on ``|A|`` alone and window values are exact).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .duality import dual_norm
from .reports import ConstantReport, register_replay
from .samplers import parse_sampler
from .spaces import NormOracle
from .vectors import FiniteVector, indicator_of_set

__all__ = [
    "SUBSET_BUDGET",
    "SIGN_BUDGET",
    "BudgetExceeded",
    "FundamentalTable",
    "lambda_of_set",
    "fundamental_function",
    "dual_fundamental_function",
    "fundamental_table",
    "democracy_constant",
    "ccu_constant",
    "sign_average",
    "bidemocracy_profile",
    "quasi_greedy_apply",
    "quasi_greedy_constant",
    "alternating_qg_vector",
]

SUBSET_BUDGET = 10**6
SIGN_BUDGET = 2**20


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


def lambda_of_set(o: NormOracle, A) -> float:
    """Norm of the indicator vector of the index set ``A``."""
    return o.norm(indicator_of_set(A))


def _indicator_array(A, length):
    v = np.zeros(length)
    v[np.asarray(list(A), dtype=int) - 1] = 1.0
    return v


def fundamental_function(o: NormOracle, n: int, N: int, mode: str = "exhaustive", *,
                         budget: int = SUBSET_BUDGET, trials: int = 200, seed: int = 0):
    """Window estimate of ``Phi(n) = sup{lambda(A) : |A| <= n}`` over ``A`` in ``{1..N}``.

    Returns ``(value, mode_used, witness_set)``.  ``mode_used`` is
    ``"symmetric"`` when the oracle is symmetric (value exact),
    ``"exhaustive"`` or ``"heuristic"`` otherwise.
    """
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    if o.is_symmetric:
        vals = [(o.norm(np.ones(k)), tuple(range(1, k + 1))) for k in range(1, n + 1)]
        v, A = max(vals, key=lambda t: t[0])
        return v, "symmetric", A
    if mode == "exhaustive":
        # Superset monotonicity lets 1-unconditional oracles skip |A| < n.
        sizes = [n] if o.is_1_unconditional else range(1, n + 1)
        count = sum(math.comb(N, k) for k in sizes)
        if count > budget:
            raise BudgetExceeded(f"{count} subsets exceed budget {budget}")
        best, arg = -math.inf, None
        for k in sizes:
            for A in itertools.combinations(range(1, N + 1), k):
                v = o.norm(_indicator_array(A, A[-1]))
                if v > best:
                    best, arg = v, A
        return best, "exhaustive", arg
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    cands = [tuple(range(N - n + 1, N + 1)), tuple(range(1, n + 1))]
    # greedy augmentation
    chosen: list[int] = []
    for _ in range(n):
        rest = [i for i in range(1, N + 1) if i not in chosen]
        i_best = max(rest, key=lambda i: (o.norm(_indicator_array(sorted(chosen + [i]), N)), i))
        chosen.append(i_best)
        cands.append(tuple(sorted(chosen)))
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        k = int(rng.integers(1, n + 1))
        cands.append(tuple(sorted(rng.choice(np.arange(1, N + 1), size=k, replace=False).tolist())))
    best, arg = -math.inf, None
    for A in cands:
        v = o.norm(_indicator_array(A, N))
        if v > best:
            best, arg = v, A
    return best, "heuristic", arg


def _phi_upper(o: NormOracle, n: int, phi_exact=None) -> float:
    """Bound for Phi(n) over all of the positive integers (not just the window)."""
    if o.is_symmetric and phi_exact is not None:
        return phi_exact
    # triangle inequality with ||e_i|| <= C0
    return n * o.semi_normalization


def dual_fundamental_function(o: NormOracle, n: int, *, N: int | None = None, seed: int = 0,
                              restarts: int = 32):
    """Bracket ``(lower, upper)`` for ``Phi*(n)``, the fundamental function of ``(e_i*)``.

    Exact for ``lp`` (``n**(1/q)``) and ``c0`` (``n``).  Otherwise the lower
    end is the best of dual-norm ascents on candidate sets and the pairing
    bound ``|A| / lambda(A)``; the upper end is ``n`` times the trivial bound
    on ``||e_i*||``, valid over all sets.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if o.has_exact_dual:
        v = o.exact_dual(np.ones(n))
        return v, v
    N = max(N or 2 * n, n)
    cands = {tuple(range(1, n + 1)), tuple(range(N - n + 1, N + 1))}
    lower = 0.0
    for A in sorted(cands):
        f = _indicator_array(A, A[-1])
        lam = o.norm(f)
        lower = max(lower, n / lam)
        br = dual_norm(o, f, "bracket", seed=seed, restarts=restarts)
        lower = max(lower, br.lower)
    per_coord = 1.0 if o.is_1_unconditional else 2.0
    return lower, max(lower, per_coord * n)


@dataclass
class FundamentalTable:
    """lambda(n), Phi(n) and dual brackets for n = 1..N."""

    N: int
    lam: list = field(default_factory=list)
    phi: list = field(default_factory=list)
    lambda_star: list = field(default_factory=list)
    phi_star: list = field(default_factory=list)
    mode: list = field(default_factory=list)

    def rows(self):
        for i in range(self.N):
            yield {
                "n": i + 1,
                "lambda": self.lam[i],
                "phi": self.phi[i],
                "phi_mode": self.mode[i],
                "lambda_star_lower": self.lambda_star[i][0] if self.lambda_star else math.nan,
                "lambda_star_upper": self.lambda_star[i][1] if self.lambda_star else math.nan,
                "phi_star_lower": self.phi_star[i][0] if self.phi_star else math.nan,
                "phi_star_upper": self.phi_star[i][1] if self.phi_star else math.nan,
            }


def fundamental_table(o: NormOracle, N: int, mode: str = "exhaustive", *, duals: bool = True,
                      budget: int = SUBSET_BUDGET, seed: int = 0, restarts: int = 32) -> FundamentalTable:
    """Tabulate lambda, Phi and (optionally) the dual brackets on ``{1..N}``.

    In exhaustive mode, sizes whose subset count exceeds ``budget`` fall back
    to the heuristic and are marked so.
    """
    t = FundamentalTable(N)
    running = -math.inf
    for n in range(1, N + 1):
        t.lam.append(o.norm(np.ones(n)))
        try:
            v, used, _ = fundamental_function(o, n, N, mode, budget=budget, seed=seed)
        except BudgetExceeded:
            v, used, _ = fundamental_function(o, n, N, "heuristic", seed=seed)
        # Phi is nondecreasing; carry the running max so heuristic rows respect it.
        running = max(running, v, t.lam[-1])
        t.phi.append(running)
        t.mode.append(used)
        if duals:
            if o.has_exact_dual:
                v = o.exact_dual(np.ones(n))
                t.lambda_star.append((v, v))
            else:
                br = dual_norm(o, np.ones(n), "bracket", seed=seed, restarts=restarts)
                t.lambda_star.append((max(br.lower, n / t.lam[-1]), br.upper))
            t.phi_star.append(dual_fundamental_function(o, n, N=N, seed=seed, restarts=restarts))
    return t


@register_replay("Delta")
def _replay_delta(o, big, small):
    return o.norm(indicator_of_set(big)) / o.norm(indicator_of_set(small))


def democracy_constant(o: NormOracle, N: int, *, budget: int = SUBSET_BUDGET, trials: int = 2000,
                       seed: int = 0) -> ConstantReport:
    """Certified lower bound for the democracy constant on ``{1..N}``.

    Each witness is a pair ``(B, A)`` with ``|B| <= |A|`` and ratio
    ``lambda(B)/lambda(A) <= Phi(|A|)/lambda(A) <= Delta``.
    """
    exhaustive = 2**N - 1 <= budget
    if exhaustive:
        sets = [A for k in range(1, N + 1) for A in itertools.combinations(range(1, N + 1), k)]
    else:
        rng = np.random.default_rng(seed)
        sets = set()
        for k in range(1, N + 1):
            sets.add(tuple(range(1, k + 1)))
            sets.add(tuple(range(N - k + 1, N + 1)))
        # budget < 2**N - 1 here, so the target is always reachable
        while len(sets) < min(trials, budget):
            k = int(rng.integers(1, N + 1))
            sets.add(tuple(sorted(rng.choice(np.arange(1, N + 1), size=k, replace=False).tolist())))
        sets = sorted(sets, key=lambda A: (len(A), A))
    lam = {A: o.norm(_indicator_array(A, A[-1])) for A in sets}
    # best (largest) indicator among sets of size <= k, and smallest of size exactly k
    top: dict = {}
    bottom: dict = {}
    for A, v in lam.items():
        k = len(A)
        if k not in top or v > lam[top[k]]:
            top[k] = A
        if k not in bottom or v < lam[bottom[k]]:
            bottom[k] = A
    ratios = []
    best_so_far = None
    for k in sorted(top):
        if best_so_far is None or lam[top[k]] > lam[best_so_far]:
            best_so_far = top[k]
        small = bottom[k]
        ratios.append((lam[best_so_far] / lam[small], {"big": list(best_so_far), "small": list(small)}))
    rep = ConstantReport.from_ratios("Delta", ratios, seed=None if exhaustive else seed)
    rep.samples = len(sets)
    rep.notes = "exhaustive" if exhaustive else "sampled"
    return rep


def _signed(signs):
    return np.asarray(signs, dtype=float)


def _sign_patterns(n):
    """All sign vectors with first sign +1 (norms are even in x)."""
    if n == 0:
        return
    for tail in itertools.product((1.0, -1.0), repeat=n - 1):
        yield (1.0,) + tail


@register_replay("C_ccu")
def _replay_ccu(o, signs):
    x = _signed(signs)
    a, b = o.norm(x), o.norm(np.abs(x))
    return max(a / b, b / a)


def ccu_constant(o: NormOracle, n: int, mode: str = "exhaustive", *, trials: int = 2000, seed: int = 0,
                 budget: int = SIGN_BUDGET) -> ConstantReport:
    """Lower bound for the constant-coefficient unconditionality constant on ``{1..n}``."""
    lam = o.norm(np.ones(n))
    if mode == "exhaustive":
        if 2 ** (n - 1) > budget:
            raise BudgetExceeded(f"2**{n - 1} sign patterns exceed budget {budget}")
        patterns = _sign_patterns(n)
        used_seed = None
    elif mode == "montecarlo":
        rng = np.random.default_rng(seed)
        patterns = (tuple(rng.choice([-1.0, 1.0], size=n)) for _ in range(trials))
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ratios = []
    for s in patterns:
        v = o.norm(_signed(s))
        ratios.append((max(v / lam, lam / v), {"signs": list(s)}))
    return ConstantReport.from_ratios("C_ccu", ratios, seed=used_seed, notes=mode)


def sign_average(o: NormOracle, n: int, mode: str = "exhaustive", *, trials: int = 2000, seed: int = 0,
                 budget: int = SIGN_BUDGET):
    """Average of ``||sum ±e_i||`` over sign choices on ``{1..n}``; returns ``(mean, stderr)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode == "exhaustive":
        if 2 ** (n - 1) > budget:
            raise BudgetExceeded(f"2**{n - 1} sign patterns exceed budget {budget}")
        vals = [o.norm(_signed(s)) for s in _sign_patterns(n)]
        return math.fsum(vals) / len(vals), 0.0
    if mode != "montecarlo":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    vals = np.array([o.norm(rng.choice([-1.0, 1.0], size=n)) for _ in range(trials)])
    mean = math.fsum(vals.tolist()) / trials
    stderr = float(np.std(vals, ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf
    return mean, stderr


def bidemocracy_profile(o: NormOracle, N: int, *, budget: int = SUBSET_BUDGET, seed: int = 0,
                        restarts: int = 32, table: FundamentalTable | None = None):
    """Brackets for ``Phi(n) * Phi*(n) / n``, ``n = 1..N``.

    Lower ends use window values of ``Phi`` and certified dual lower bounds and
    are never below 1 (the indicator functional pairs to ``n`` against the
    indicator vector).  Upper ends use bounds valid over all sets.
    """
    t = table or fundamental_table(o, N, "exhaustive", budget=budget, seed=seed, restarts=restarts)
    out = []
    for i in range(N):
        n = i + 1
        phi_lo = t.phi[i]
        phi_hi = _phi_upper(o, n, phi_lo if o.is_symmetric else None)
        ps_lo, ps_hi = t.phi_star[i]
        lo = phi_lo * ps_lo / n
        hi = phi_hi * ps_hi / n
        lo = max(1.0, lo)
        out.append((lo, max(lo, hi)))
    return out


def quasi_greedy_apply(x, delta: float):
    """Keep coefficients with ``|x_i| >= delta`` and zero the rest."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    c = np.asarray(getattr(x, "coeffs", x), dtype=float)
    return FiniteVector(np.where(np.abs(c) >= delta, c, 0.0))


@register_replay("A_qg")
def _replay_qg(o, x, delta):
    return o.norm(quasi_greedy_apply(x, delta)) / o.norm(np.asarray(x, dtype=float))


def alternating_qg_vector(k: int) -> np.ndarray:
    """Alternating-sign vector of length ``2k+1`` built to defeat thresholding in the summing basis.

    ``(-1/2, 1, -c, 1, -c, ..., 1, -1/2)`` with ``c = 63/64``: its partial sums
    stay below ``1/2 + (k-1)/64`` while keeping only the ``+1`` entries leaves
    partial sums reaching ``k``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    x = np.empty(2 * k + 1)
    x[0::2] = -63 / 64
    x[1::2] = 1.0
    x[0] = x[-1] = -0.5
    return x


def quasi_greedy_constant(o: NormOracle, sampler="gaussian", trials: int = 500, seed: int = 0,
                          *, structured: bool = True) -> ConstantReport:
    """Lower bound for the quasi-greedy constant.

    Thresholding is piecewise constant in ``delta``, so only the breakpoints
    ``delta in {|x_i|}`` are tried for each sampled ``x``.
    """
    smp = parse_sampler(sampler)
    rng = np.random.default_rng(seed)
    xs = [smp.draw(rng) for _ in range(trials)]
    if structured:
        for k in range(1, (smp.n - 1) // 2 + 1):
            xs.append(alternating_qg_vector(k))
            eps = 2.0**-10
            y = np.ones(2 * k + 1)
            y[1::2] = -(1 - eps)
            xs.append(y)
    ratios = []
    for x in xs:
        nx = o.norm(x)
        if nx == 0:
            continue
        for d in np.unique(np.abs(x[x != 0])):
            g = np.where(np.abs(x) >= d, x, 0.0)
            ratios.append((o.norm(g) / nx, {"x": x.tolist(), "delta": float(d)}))
    return ConstantReport.from_ratios("A_qg", ratios, seed=seed)
