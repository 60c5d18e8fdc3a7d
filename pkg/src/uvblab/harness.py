"""Checks of the block-multiplication conditions and the suite that runs them.

Each ``*_stats``/``*_check`` function returns :class:`ConstantReport` objects
(or plain tables) whose witnesses can be replayed.  :func:`run_suite` runs
all of them for one space under a :class:`SuiteConfig` and derives a
classification hint from the certified values only.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .duality import dual_norm
from .greedy import (
    BudgetExceeded,
    bidemocracy_profile,
    ccu_constant,
    democracy_constant,
    fundamental_table,
    quasi_greedy_constant,
    sign_average,
)
from .reports import ConstantReport, jsonable, register_replay
from .samplers import parse_sampler
from .spaces import NormOracle, SpaceDescriptor, make_oracle, parse_space
from .tsirelson import WindowError
from .vectors import FiniteVector, PowerSizeError, basis_vector, power, tensor_mul

__all__ = [
    "ExponentFit",
    "EltonResult",
    "SuiteConfig",
    "SuiteReport",
    "k_ratio_stats",
    "squares_condition_stats",
    "power_condition_profile",
    "power_condition_stats",
    "lambda_grid",
    "fit_exponent",
    "upper_p_estimate_check",
    "dual_q_estimate_check",
    "ell1_average_slope",
    "ell1_lower_constant",
    "elton_subset_search",
    "shift_equivalence",
    "difference_basis_check",
    "run_suite",
    "derive_seed",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1


def derive_seed(master: int, name: str) -> int:
    """Per-check seed from the master seed and the check name (stable across runs)."""
    digest = hashlib.sha256(f"{master}:{name}".encode()).digest()
    return int.from_bytes(digest[:4], "little")


def _vec(x) -> FiniteVector:
    return x if isinstance(x, FiniteVector) else FiniteVector(x)


# -- the two-sided multiplication condition ---------------------------------

def _structured_vectors(max_len: int):
    """Indicators, alternating signs, single spikes and geometric decay."""
    out = []
    for n in range(1, max_len + 1):
        out.append(np.ones(n))
        out.append((-1.0) ** np.arange(n))
        out.append(basis_vector(n).coeffs.copy())
        for r in (0.5, 0.9):
            out.append(r ** np.arange(n))
    return out


@register_replay("K_upper")
def _replay_kup(o, alpha, beta):
    a, b = _vec(alpha), _vec(beta)
    return o.norm(tensor_mul(a, b)) / (o.norm(a) * o.norm(b))


@register_replay("K_lower")
def _replay_klo(o, alpha, beta):
    a, b = _vec(alpha), _vec(beta)
    return o.norm(a) * o.norm(b) / o.norm(tensor_mul(a, b))


def _pairs(sampler, trials, seed, window):
    smp = parse_sampler(sampler)
    rng = np.random.default_rng(seed)
    side = max(1, math.isqrt(window))
    pairs = list(itertools.product(_structured_vectors(min(side, smp.n)), repeat=2))
    pairs = [(a, b) for a, b in pairs if a.shape[0] * b.shape[0] <= window]
    for _ in range(trials):
        m = int(rng.integers(1, smp.n + 1))
        k = int(rng.integers(1, max(1, min(smp.n, window // m)) + 1))
        pairs.append((smp.with_length(m).draw(rng), smp.with_length(k).draw(rng)))
    return pairs


def k_ratio_stats(o: NormOracle, sampler="gaussian", trials: int = 2000, seed: int = 0, *, window: int = 64):
    """Evidence for the two-sided bound ``||a||·||b|| / K <= ||a ⊗ b|| <= K ||a||·||b||``.

    Returns ``(upper_report, lower_report)``: the largest witnessed
    ``||a⊗b|| / (||a|| ||b||)`` and its reciprocal, over structured pairs and
    ``trials`` random pairs with ``len(a)·len(b) <= window``.
    """
    up, lo = [], []
    for a, b in _pairs(sampler, trials, seed, window):
        A, B = _vec(a), _vec(b)
        na, nb = o.norm(A), o.norm(B)
        nab = o.norm(tensor_mul(A, B))
        inp = {"alpha": A.to_list(), "beta": B.to_list()}
        up.append((nab / (na * nb), inp))
        lo.append((na * nb / nab, inp))
    return (ConstantReport.from_ratios("K_upper", up, seed=seed),
            ConstantReport.from_ratios("K_lower", lo, seed=seed))


@register_replay("K_squares")
def _replay_sq(o, alpha):
    a = _vec(alpha)
    return o.norm(a) ** 2 / o.norm(tensor_mul(a, a))


def squares_condition_stats(o: NormOracle, sampler="gaussian", trials: int = 500, seed: int = 0, *,
                            window: int = 64) -> ConstantReport:
    """Largest witnessed ``||a||^2 / ||a ⊗ a||`` with ``len(a)**2 <= window``."""
    smp = parse_sampler(sampler)
    rng = np.random.default_rng(seed)
    side = max(1, math.isqrt(window))
    xs = _structured_vectors(min(side, smp.n))
    for _ in range(trials):
        xs.append(smp.with_length(int(rng.integers(1, min(side, smp.n) + 1))).draw(rng))
    ratios = []
    for x in xs:
        a = _vec(x)
        ratios.append((o.norm(a) ** 2 / o.norm(tensor_mul(a, a)), {"alpha": a.to_list()}))
    return ConstantReport.from_ratios("K_squares", ratios, seed=seed)


def power_condition_profile(o: NormOracle, a, n_max: int, *, size_cap: int | None = None) -> list:
    """``(||a||^n / ||a^n||)^(1/n)`` for ``n = 1..n_max``."""
    a = _vec(a)
    cap = size_cap if size_cap is not None else o.window_cap
    if len(a) > 1 and n_max * math.log(len(a)) > math.log(cap) + 1e-12:
        raise PowerSizeError(f"length {len(a)}**{n_max} exceeds cap {cap}")
    na = o.norm(a)
    out = []
    p = a
    for n in range(1, n_max + 1):
        if n > 1:
            p = tensor_mul(p, a)
        out.append((na**n / o.norm(p)) ** (1.0 / n))
    return out


@register_replay("K_tilde")
def _replay_kt(o, alpha, n):
    a = _vec(alpha)
    return (o.norm(a) ** n / o.norm(power(a, n))) ** (1.0 / n)


def power_condition_stats(o: NormOracle, sampler="gaussian", trials: int = 100, seed: int = 0, *,
                          window: int = 64) -> ConstantReport:
    """Largest witnessed ``(||a||^n / ||a^n||)^(1/n)`` with ``len(a)**n <= window``."""
    smp = parse_sampler(sampler)
    rng = np.random.default_rng(seed)
    xs = [np.ones(2), np.array([1.0, -1.0]), np.array([1.0, 0.5]), np.ones(3), np.array([0.5, 1.0])]
    for _ in range(trials):
        xs.append(smp.with_length(int(rng.integers(2, 4))).draw(rng))
    ratios = []
    for x in xs:
        a = _vec(x)
        if len(a) < 2:
            continue
        n_max = int(math.floor(math.log(window) / math.log(len(a)) + 1e-12))
        if n_max < 1:
            continue
        for n, r in enumerate(power_condition_profile(o, a, n_max, size_cap=window), start=1):
            ratios.append((r, {"alpha": a.to_list(), "n": n}))
    return ConstantReport.from_ratios("K_tilde", ratios, seed=seed)


def lambda_grid(o: NormOracle, m_max: int, n_max: int) -> np.ndarray:
    """Matrix of ``lambda(mn) / (lambda(m) lambda(n))`` for ``m <= m_max``, ``n <= n_max``."""
    if m_max * n_max > o.window_cap:
        raise WindowError(f"m_max*n_max = {m_max * n_max} exceeds window {o.window_cap}")
    lam = {k: o.norm(np.ones(k)) for k in range(1, m_max * n_max + 1)}
    g = np.empty((m_max, n_max))
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            g[m - 1, n - 1] = lam[m * n] / (lam[m] * lam[n])
    return g


# -- exponent fit and p / q estimates ---------------------------------------

@dataclass
class ExponentFit:
    p_hat: float
    slope: float
    r_squared: float
    points: list = field(default_factory=list)

    def as_dict(self):
        return jsonable(asdict(self))


def fit_exponent(table) -> ExponentFit:
    """Least-squares fit of ``log lambda(2^k)`` against ``k log 2``; ``p_hat = 1/slope``.

    ``table`` is a :class:`FundamentalTable` or a sequence ``lambda(1), lambda(2), ...``.
    ``p_hat`` is ``inf`` when the slope is below 0.02 in magnitude.
    """
    lam = list(getattr(table, "lam", table))
    ns = [2**k for k in range(0, 64) if 2**k <= len(lam)]
    if len(ns) < 3:
        raise ValueError("need at least 3 dyadic points")
    xs = np.array([math.log(n) for n in ns])
    ys = np.array([math.log(lam[n - 1]) for n in ns])
    xc = xs - xs.mean()
    yc = ys - ys.mean()
    slope = float(xc @ yc / (xc @ xc))
    ss_tot = float(yc @ yc)
    resid = yc - slope * xc
    r2 = 1.0 if ss_tot == 0 else max(0.0, min(1.0, 1.0 - float(resid @ resid) / ss_tot))
    p_hat = math.inf if abs(slope) < 0.02 else 1.0 / slope
    return ExponentFit(p_hat, slope, r2, [(n, lam[n - 1]) for n in ns])


def _lq(x, q):
    a = np.abs(np.asarray(x, dtype=float))
    if math.isinf(q):
        return float(np.max(a))
    return math.fsum((a**q).tolist()) ** (1.0 / q)


@register_replay("K_upper_p")
def _replay_up(o, a, p):
    return o.norm(np.asarray(a, dtype=float)) / _lq(a, p)


def upper_p_estimate_check(o: NormOracle, p: float, sampler="gaussian", trials: int = 500, seed: int = 0, *,
                           window: int = 64) -> ConstantReport:
    """Largest witnessed ``||sum a_i e_i|| / ||a||_p``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    smp = parse_sampler(sampler)
    rng = np.random.default_rng(seed)
    xs = [np.ones(n) for n in range(1, window + 1)] + _structured_vectors(min(window, smp.n))
    xs += [smp.draw(rng) for _ in range(trials)]
    ratios = [(o.norm(x) / _lq(x, p), {"a": np.asarray(x).tolist(), "p": p}) for x in xs]
    return ConstantReport.from_ratios("K_upper_p", ratios, seed=seed)


@register_replay("K_dual_q")
def _replay_dq(o, a, q, x):
    # lower bound f(x)/||x|| on the dual norm of f = a, divided by ||a||_q
    f = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    k = min(f.shape[0], x.shape[0])
    return math.fsum((f[:k] * x[:k]).tolist()) / o.norm(x) / _lq(f, q)


def dual_q_estimate_check(o: NormOracle, q: float, sampler="gaussian", trials: int = 40, seed: int = 0, *,
                          restarts: int = 8) -> ConstantReport:
    """Largest witnessed ``||sum a_i e_i*||_* / ||a||_q`` using certified dual lower bounds.

    Each witness stores the primal vector ``x`` realizing the dual lower
    bound, so the ratio replays without re-running the ascent.
    """
    smp = parse_sampler(sampler)
    rng = np.random.default_rng(seed)
    fs = [np.ones(n) for n in range(1, smp.n + 1)] + [smp.draw(rng) for _ in range(trials)]
    ratios = []
    for f in fs:
        if o.has_exact_dual:
            # Hölder maximizer x_i = sign(f_i)|f_i|^(q0-1) for the conjugate q0 of o
            q0 = o.conjugate_exponent
            if math.isinf(q0):
                x = np.zeros_like(f)
                x[np.argmax(np.abs(f))] = np.sign(f[np.argmax(np.abs(f))])
            elif q0 == 1:
                x = np.sign(f)
            else:
                x = np.sign(f) * np.abs(f) ** (q0 - 1)
        else:
            x = np.asarray(dual_norm(o, f, "bracket", seed=seed, restarts=restarts).witness)
        inp = {"a": f.tolist(), "q": q, "x": x.tolist()}
        ratios.append((_replay_dq(o, **inp), inp))
    return ConstantReport.from_ratios("K_dual_q", ratios, seed=seed)


# -- the l1 criterion ---------------------------------------------------------

def ell1_average_slope(o: NormOracle, N: int, *, sign_budget: int = 2**20, trials: int = 2000,
                       seed: int = 0, exhaustive_max: int | None = None) -> list:
    """``Ave_± ||sum_{i<=n} ±e_i|| / n`` for ``n = 1..N``.

    Exhaustive while ``2**(n-1)`` fits ``sign_budget`` (and ``n <= exhaustive_max``
    if given), Monte Carlo beyond.  Returns rows ``(n, value, stderr, mode)``.
    """
    rows = []
    for n in range(1, N + 1):
        exhaustive = 2 ** (n - 1) <= sign_budget and (exhaustive_max is None or n <= exhaustive_max)
        mode = "exhaustive" if exhaustive else "montecarlo"
        mean, se = sign_average(o, n, mode, trials=trials, seed=derive_seed(seed, f"signavg:{n}"),
                                budget=sign_budget)
        rows.append((n, mean / n, se / n, mode))
    return rows


def _simplex_min(o: NormOracle, signs: np.ndarray, starts, tol=1e-6, max_sweeps=200):
    """Minimize ``||signs * w||`` over the probability simplex by mass transfers."""
    k = signs.shape[0]
    best_v, best_w = math.inf, None
    for w0 in starts:
        w = np.asarray(w0, dtype=float)
        w = w / w.sum()
        v = o.norm(signs * w) / math.fsum(w.tolist())
        h = 0.5
        sweeps = 0
        while h > tol and sweeps < max_sweeps and k > 1:
            sweeps += 1
            improved = False
            for i in range(k):
                for j in range(k):
                    if i == j or w[i] <= 0:
                        continue
                    t = min(h, w[i])
                    y = w.copy()
                    y[i] -= t
                    y[j] += t
                    val = o.norm(signs * y) / math.fsum(y.tolist())
                    if val < v - 1e-15:
                        w, v, improved = y, val, True
            if not improved:
                h *= 0.5
        if v < best_v:
            best_v, best_w = v, w
    return best_v, best_w


def ell1_lower_constant(o: NormOracle, A, *, seed: int = 0, random_starts: int = 2, screen: float = -math.inf):
    """Smallest ``||sum_{i in A} a_i e_i|| / sum |a_i|`` found over the l1 sphere on ``A``.

    Sign patterns are enumerated (only the all-positive one for
    1-unconditional norms) and each orthant's simplex is searched from the
    uniform point, the vertices' neighbours and random Dirichlet points.  For
    1-unconditional norms the objective is convex on the simplex, so the
    search finds the global minimum up to ``tol``.  When some orthant's
    uniform point already falls below ``screen`` that value is returned
    without further search.  Returns ``(value, a)`` with ``value`` attained
    at ``a``.
    """
    A = sorted(A)
    k = len(A)
    L = A[-1]
    rng = np.random.default_rng(seed)
    if o.is_1_unconditional:
        patterns = [np.ones(k)]
    else:
        patterns = [np.array((1.0,) + t) for t in itertools.product((1.0, -1.0), repeat=k - 1)]
    starts = [np.ones(k)] + [rng.dirichlet(np.ones(k)) for _ in range(random_starts)]
    best_v, best_a = math.inf, None
    idx = np.asarray(A) - 1

    class _Embedded:
        # evaluates the oracle on vectors supported on A
        is_1_unconditional = o.is_1_unconditional

        @staticmethod
        def norm(w):
            x = np.zeros(L)
            x[idx] = w
            return o.norm(x)

    # screen: the uniform point of every orthant is an upper bound for the minimum
    uniform = min(((_Embedded.norm(s) / k, s) for s in patterns), key=lambda t: t[0])
    if uniform[0] < screen:
        x = np.zeros(L)
        x[idx] = uniform[1] / k
        return uniform[0], x
    for s in patterns:
        v, w = _simplex_min(_Embedded, s, starts)
        if v < best_v:
            best_v = v
            x = np.zeros(L)
            x[idx] = s * w
            best_a = x
    return best_v, best_a


@dataclass
class EltonResult:
    subset: tuple
    n: int
    c: float
    constant: float
    witness: list
    tested: int

    @property
    def size(self) -> int:
        return len(self.subset)

    @property
    def delta1(self) -> float:
        return len(self.subset) / self.n

    def as_dict(self):
        return jsonable({"subset": list(self.subset), "n": self.n, "c": self.c, "size": self.size,
                         "delta1": self.delta1, "constant": self.constant, "witness": self.witness,
                         "tested": self.tested})


def elton_subset_search(o: NormOracle, n: int, c: float, *, seed: int = 0, max_n: int = 12) -> EltonResult:
    """Largest ``A ⊆ {1..n}`` whose found l1-lower constant is at least ``c``.

    Sizes are tried from ``n`` down.  A set containing a known failing set is
    skipped (failure is inherited by supersets), and a set is rejected early
    when a uniform-magnitude signed vector already falls below ``c``.
    """
    if n > max_n:
        raise BudgetExceeded(f"exhaustive Elton search limited to n <= {max_n}")
    failing: list[frozenset] = []
    tested = 0
    for size in range(n, 0, -1):
        best = None
        for A in itertools.combinations(range(1, n + 1), size):
            fa = frozenset(A)
            if any(f <= fa for f in failing):
                continue
            tested += 1
            v, a = ell1_lower_constant(o, A, seed=seed, screen=c - 1e-12)
            if v >= c - 1e-12:
                if best is None or v > best[1]:
                    best = (A, v, a)
            else:
                failing.append(fa)
        if best is not None:
            return EltonResult(best[0], n, c, best[1], best[2].tolist(), tested)
    return EltonResult((), n, c, math.nan, [], tested)


# -- shift and difference identities -----------------------------------------

@register_replay("C_shift_up")
def _replay_shift_up(o, a, m):
    x = _vec(a)
    return o.norm(tensor_mul(basis_vector(m + 1), x)) / o.norm(x)


@register_replay("C_shift_down")
def _replay_shift_down(o, a, m):
    x = _vec(a)
    return o.norm(x) / o.norm(tensor_mul(basis_vector(m + 1), x))


def _explicit_shift(a: FiniteVector, offset: int) -> FiniteVector:
    return FiniteVector(np.concatenate([np.zeros(offset), a.coeffs]))


def shift_equivalence(o: NormOracle, m: int, n: int, sampler="gaussian", trials: int = 200, seed: int = 0):
    """Compare ``(e_{mn+i})_{i<=n}`` with ``(e_i)_{i<=n}``.

    Uses ``e_{m+1} ⊗ a`` for the shifted vector and checks it against the
    explicit shift by ``mn`` positions.  Returns ``(up, down, selftest_ok)``.
    """
    smp = parse_sampler(sampler).with_length(n)
    rng = np.random.default_rng(seed)
    xs = [np.ones(n), (-1.0) ** np.arange(n), 0.5 ** np.arange(n)] + [smp.draw(rng) for _ in range(trials)]
    up, down = [], []
    ok = True
    for x in xs:
        a = FiniteVector(x)
        if len(a) != n:
            continue
        sh = tensor_mul(basis_vector(m + 1), a)
        ok &= sh == _explicit_shift(a, m * n)
        na, ns = o.norm(a), o.norm(sh)
        inp = {"a": a.to_list(), "m": m}
        up.append((ns / na, inp))
        down.append((na / ns, inp))
    return (ConstantReport.from_ratios("C_shift_up", up, seed=seed),
            ConstantReport.from_ratios("C_shift_down", down, seed=seed), bool(ok))


_E2_MINUS_E1 = FiniteVector([-1.0, 1.0])


def _explicit_difference(a: FiniteVector) -> FiniteVector:
    out = np.zeros(2 * len(a))
    out[0::2] = -np.asarray(a.coeffs, dtype=float)
    out[1::2] = np.asarray(a.coeffs, dtype=float)
    return FiniteVector(out)


@register_replay("C_diff_up")
def _replay_diff_up(o, a):
    x = _vec(a)
    return o.norm(tensor_mul(x, _E2_MINUS_E1)) / o.norm(x)


@register_replay("C_diff_down")
def _replay_diff_down(o, a):
    x = _vec(a)
    return o.norm(x) / o.norm(tensor_mul(x, _E2_MINUS_E1))


def difference_basis_check(o: NormOracle, sampler="gaussian", trials: int = 200, seed: int = 0, *, n: int = 8):
    """Compare ``(e_i)`` with ``(e_{2i} - e_{2i-1})`` via ``a ⊗ (e_2 - e_1)``.

    Returns ``(up, down, selftest_ok)``; ``up`` bounds
    ``sup ||sum a_i (e_{2i}-e_{2i-1})|| / ||sum a_i e_i||`` from below and
    ``down`` the reciprocal sup.
    """
    smp = parse_sampler(sampler).with_length(n)
    rng = np.random.default_rng(seed)
    xs = [np.ones(k) for k in range(1, n + 1)] + [(-1.0) ** np.arange(n)]
    xs += [smp.draw(rng) for _ in range(trials)]
    up, down = [], []
    ok = True
    for x in xs:
        a = FiniteVector(x)
        d = tensor_mul(a, _E2_MINUS_E1)
        ok &= d == _explicit_difference(a)
        na, nd = o.norm(a), o.norm(d)
        inp = {"a": a.to_list()}
        up.append((nd / na, inp))
        down.append((na / nd, inp))
    return (ConstantReport.from_ratios("C_diff_up", up, seed=seed),
            ConstantReport.from_ratios("C_diff_down", down, seed=seed), bool(ok))


# -- the suite -------------------------------------------------------------------

@dataclass
class SuiteConfig:
    """Budgets for :func:`run_suite`.  All fields are written into every report."""

    N: int = 32
    trials: int = 2000
    subset_cap: int = 10**6
    sign_cap: int = 2**20
    seed: int = 0
    sampler: str = "gaussian"
    threshold: float = 3.0
    # sub-windows for the costlier tables
    phi_window: int = 16
    sign_exhaustive_max: int = 16
    democracy_window: int = 12
    ccu_n: int = 12
    bidemocracy_window: int = 12
    dual_restarts: int = 8
    dual_trials: int = 40
    elton_n: int = 8
    elton_c: float = 0.45

    def validate(self):
        if self.N < 4:
            raise ValueError("window N must be >= 4")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.subset_cap < 1 or self.sign_cap < 1:
            raise ValueError("budgets must be positive")
        if self.threshold <= 1:
            raise ValueError("inconsistency threshold must exceed 1")
        parse_sampler(self.sampler)
        return self


@dataclass
class SuiteReport:
    space: str
    config: dict
    checks: list
    classification_hint: str
    profiles: dict
    timestamp: dict
    schema_version: int = SCHEMA_VERSION

    def as_dict(self):
        return jsonable({
            "schema_version": self.schema_version,
            "space": self.space,
            "classification_hint": self.classification_hint,
            "config": self.config,
            "checks": sorted(self.checks, key=lambda c: c["name"]),
            "profiles": self.profiles,
            "timestamp": self.timestamp,
        })

    def check(self, name):
        for c in self.checks:
            if c["name"] == name:
                return c
        raise KeyError(name)


def _lp_hint(p_hat):
    return f"consistent-with-lp({p_hat:.3f})"


def _classify(results: dict, cfg: SuiteConfig) -> str:
    """Decision rules for the classification hint (certified values only)."""
    lam = results.get("lambda_window")
    if lam is not None and max(lam) - min(lam) <= 1e-6:
        return "consistent-with-c0"
    flat = results.get("flat_ratios")
    fit = results.get("fit")
    if flat is not None and all(abs(v - 1) <= 1e-6 for v in flat) and fit is not None and math.isfinite(fit.p_hat):
        return _lp_hint(fit.p_hat)
    kup, klo = results.get("K_upper"), results.get("K_lower")
    family = results.get("family_growth")
    if kup is not None and klo is not None:
        product = kup.certified_lower * klo.certified_lower
        if product > cfg.threshold and family:
            return "inconsistent-with-(2)"
    return "inconclusive"


def _family_growth(o: NormOracle, window: int):
    """``K_upper·K_lower`` certified along indicator pairs and shifted indicators.

    Returns the per-size sequence and whether it grows (its max over the
    larger half of sizes exceeds its max over the smaller half).
    """
    side = math.isqrt(window)
    seq = []
    for n in range(1, side + 1):
        a = FiniteVector(np.ones(n))
        pairs = [(a, a)] + [(basis_vector(k), a) for k in range(1, side + 1)]
        ups, los = [], []
        for x, y in pairs:
            r = o.norm(tensor_mul(x, y)) / (o.norm(x) * o.norm(y))
            ups.append(r)
            los.append(1 / r)
        seq.append(max(ups) * max(los))
    half = len(seq) // 2
    grows = len(seq) >= 2 and max(seq[half:]) > max(seq[:half]) + 1e-9
    return seq, grows


def run_suite(space, config: SuiteConfig | None = None) -> SuiteReport:
    """Run every check for one space and derive the classification hint.

    A check that exceeds a budget is recorded as ``skipped`` and the suite
    carries on.
    """
    cfg = (config or SuiteConfig()).validate()
    desc = space if isinstance(space, SpaceDescriptor) else parse_space(space)
    o = make_oracle(desc, window_cap=max(cfg.N, 64))
    N = cfg.N
    side = math.isqrt(N)
    checks: list = []
    runtimes: dict = {}
    results: dict = {}
    profiles: dict = {}

    def run(name, fn):
        seed = derive_seed(cfg.seed, name)
        t0 = time.perf_counter()
        rec = {"name": name, "seed": seed}
        try:
            rec.update(status="ok", **fn(seed))
        except (BudgetExceeded, WindowError, PowerSizeError) as exc:
            rec.update(status="skipped", reason=str(exc))
        runtimes[name] = round(time.perf_counter() - t0, 6)
        checks.append(rec)
        return rec

    def rep(r: ConstantReport):
        return {"report": r.as_dict()}

    def k_ratio(seed):
        up, lo = k_ratio_stats(o, cfg.sampler, cfg.trials, seed, window=N)
        results["K_upper"], results["K_lower"] = up, lo
        seq, grows = _family_growth(o, N)
        results["family_growth"] = grows
        profiles["k_family"] = [{"n": i + 1, "k_product": v} for i, v in enumerate(seq)]
        return {"reports": [up.as_dict(), lo.as_dict()], "family_products": seq, "family_grows": grows,
                "product": up.certified_lower * lo.certified_lower}

    def squares(seed):
        return rep(squares_condition_stats(o, cfg.sampler, max(1, cfg.trials // 4), seed, window=N))

    def power_stats(seed):
        r = power_condition_stats(o, cfg.sampler, max(1, cfg.trials // 20), seed, window=N)
        rows = []
        for a in ([1.0, 1.0], [1.0, -1.0], [1.0, 0.5]):
            n_max = int(math.floor(math.log(N) / math.log(2) + 1e-12))
            prof = power_condition_profile(o, a, n_max, size_cap=N)
            rows += [{"alpha": str(a), "n": i + 1, "ratio": v} for i, v in enumerate(prof)]
        profiles["power_profile"] = rows
        results.setdefault("flat_ratios", []).extend(v["ratio"] for v in rows)
        return rep(r)

    def grid(seed):
        g = lambda_grid(o, side, side)
        profiles["lambda_grid"] = [{"m": m + 1, "n": n + 1, "ratio": float(g[m, n])}
                                   for m in range(side) for n in range(side)]
        results.setdefault("flat_ratios", []).extend(g.ravel().tolist())
        return {"grid": g.tolist(), "min": float(g.min()), "max": float(g.max())}

    def fit(seed):
        lam = [o.norm(np.ones(n)) for n in range(1, N + 1)]
        results["lambda_window"] = lam
        f = fit_exponent(lam)
        results["fit"] = f
        return {"fit": f.as_dict()}

    def table(seed):
        t = fundamental_table(o, min(N, cfg.phi_window), "exhaustive", duals=False,
                              budget=cfg.subset_cap, seed=seed)
        profiles["fundamental"] = [
            {k: r[k] for k in ("n", "lambda", "phi", "phi_mode")} for r in t.rows()
        ]
        return {"phi": t.phi, "modes": t.mode}

    def democracy(seed):
        return rep(democracy_constant(o, min(N, cfg.democracy_window), budget=cfg.subset_cap, seed=seed))

    def ccu(seed):
        n = min(N, cfg.ccu_n)
        mode = "exhaustive" if 2 ** (n - 1) <= cfg.sign_cap else "montecarlo"
        return rep(ccu_constant(o, n, mode, trials=cfg.trials, seed=seed, budget=cfg.sign_cap))

    def signs(seed):
        rows = ell1_average_slope(o, N, sign_budget=cfg.sign_cap, trials=cfg.trials, seed=seed,
                                  exhaustive_max=cfg.sign_exhaustive_max)
        profiles["sign_average"] = [{"n": n, "avg_over_n": v, "stderr": s, "mode": m} for n, v, s, m in rows]
        return {"min_over_window": min(r[1] for r in rows), "last": rows[-1][1]}

    def bidem(seed):
        nb = min(N, cfg.bidemocracy_window)
        t = fundamental_table(o, nb, "exhaustive", budget=cfg.subset_cap, seed=seed,
                              restarts=cfg.dual_restarts)
        prof = bidemocracy_profile(o, nb, table=t)
        profiles["bidemocracy"] = [{"n": i + 1, "lower": lo, "upper": hi} for i, (lo, hi) in enumerate(prof)]
        pairing = all(t.phi[i] * t.phi_star[i][0] >= (i + 1) * (1 - 1e-12) for i in range(nb))
        return {"brackets": [list(b) for b in prof], "pairing_bound_holds": pairing}

    def qg(seed):
        smp = parse_sampler(cfg.sampler).with_length(min(N, 13))
        return rep(quasi_greedy_constant(o, smp, max(1, cfg.trials // 4), seed))

    def upper_p(seed):
        f = results.get("fit")
        if f is None or not math.isfinite(f.p_hat) or f.p_hat < 1:
            raise BudgetExceeded("no finite exponent >= 1 fitted")
        return rep(upper_p_estimate_check(o, f.p_hat, cfg.sampler, max(1, cfg.trials // 4), seed, window=N))

    def dual_q(seed):
        f = results.get("fit")
        if f is None or not math.isfinite(f.p_hat) or f.p_hat < 1:
            raise BudgetExceeded("no finite exponent >= 1 fitted")
        q = math.inf if f.p_hat <= 1 + 1e-12 else f.p_hat / (f.p_hat - 1)
        return rep(dual_q_estimate_check(o, q, cfg.sampler, cfg.dual_trials, seed, restarts=cfg.dual_restarts))

    def elton(seed):
        n = min(N, cfg.elton_n)
        return {"result": elton_subset_search(o, n, cfg.elton_c, seed=seed).as_dict()}

    def shifts(seed):
        out, ok_all = [], True
        for m in (1, 2, 3):
            n = min(8, N // (m + 1))
            up, down, ok = shift_equivalence(o, m, n, cfg.sampler, max(1, cfg.trials // 10), seed)
            ok_all &= ok
            out.append({"m": m, "n": n, "up": up.as_dict(), "down": down.as_dict(), "selftest": ok})
            results.setdefault("flat_ratios", []).extend([up.certified_lower, down.certified_lower])
        return {"by_m": out, "selftest": ok_all}

    def diff(seed):
        up, down, ok = difference_basis_check(o, cfg.sampler, max(1, cfg.trials // 10), seed, n=min(8, N // 2))
        return {"up": up.as_dict(), "down": down.as_dict(), "selftest": ok}

    # fit first: p/q checks depend on it
    run("fit_exponent", fit)
    run("k_ratio", k_ratio)
    run("squares_condition", squares)
    run("power_condition", power_stats)
    run("lambda_grid", grid)
    run("fundamental_table", table)
    run("democracy", democracy)
    run("ccu", ccu)
    run("sign_average", signs)
    run("bidemocracy", bidem)
    run("quasi_greedy", qg)
    run("upper_p_estimate", upper_p)
    run("dual_q_estimate", dual_q)
    run("elton_search", elton)
    run("shift_equivalence", shifts)
    run("difference_basis", diff)

    # Chain: a certified K_lower witness above 1 rules out every lp hint.
    hint = _classify(results, cfg)
    klo = results.get("K_lower")
    if hint.startswith("consistent-with-lp") and klo is not None and klo.certified_lower > 1 + 1e-6:
        hint = "inconclusive"

    return SuiteReport(
        space=desc.to_text(),
        config=asdict(cfg),
        checks=checks,
        classification_hint=hint,
        profiles=profiles,
        timestamp={"utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()), "check_runtime_s": runtimes},
    )
