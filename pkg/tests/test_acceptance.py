"""The thirteen acceptance criteria, each at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from uvblab.cli import main as cli_main  # noqa: E402
from uvblab.greedy import (  # noqa: E402
    _replay_qg,
    alternating_qg_vector,
    bidemocracy_profile,
    ccu_constant,
    democracy_constant,
    fundamental_table,
    quasi_greedy_constant,
    sign_average,
)
from uvblab.harness import elton_subset_search, fit_exponent, lambda_grid, power_condition_profile  # noqa: E402
from uvblab.spaces import oracle_for  # noqa: E402
from uvblab.tsirelson import tsirelson_norm  # noqa: E402
from uvblab.vectors import (  # noqa: E402
    FiniteVector,
    basis_vector,
    multinomial_power,
    power,
    tensor_mul,
)

FX = json.loads((HERE / "fixtures" / "tsirelson.json").read_text())
P_VALUES = (1.0, 1.5, 2.0, 3.0)
CATALOG = [f"lp:p={p:g}" for p in P_VALUES] + ["c0", "lorentz", "tsirelson", "tp:p=2", "summing"]
SYMMETRIC = [f"lp:p={p:g}" for p in P_VALUES] + ["c0", "lorentz"]
UNCONDITIONAL = SYMMETRIC + ["tsirelson", "tp:p=2"]

CRITERIA: dict = {}


def criterion(number, title):
    def deco(fn):
        CRITERIA[number] = (title, fn)
        return fn

    return deco


class Failed(AssertionError):
    pass


def check(cond, msg):
    if not cond:
        raise Failed(msg)


def _structured(max_len=6):
    out = []
    for n in range(1, max_len + 1):
        out += [np.ones(n), (-1.0) ** np.arange(n), 0.5 ** np.arange(n), 0.9 ** np.arange(n),
                basis_vector(n).coeffs.copy()]
    return out


@criterion(1, "block product is exactly multiplicative on lp and c0")
def c1():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    pairs = [(a, b) for a in _structured() for b in _structured()]
    for _ in range(10**4):
        pairs.append((rng.standard_normal(int(rng.integers(1, 9))), rng.standard_normal(int(rng.integers(1, 9)))))
    pairs = [(FiniteVector(a), FiniteVector(b)) for a, b in pairs]
    worst = 0.0
    for space in [f"lp:p={p:g}" for p in P_VALUES] + ["c0"]:
        o = oracle_for(space)
        for a, b in pairs:
            na, nb = o.norm(a), o.norm(b)
            dev = abs(o.norm(tensor_mul(a, b)) - na * nb) / (na * nb)
            worst = max(worst, dev)
            check(dev <= 1e-9, f"{space}: relative deviation {dev:.3e} at {a.to_list()}, {b.to_list()}")
    dt = time.perf_counter() - t0
    check(dt < 10, f"runtime {dt:.1f}s >= 10s")
    return f"{len(pairs)} pairs x 5 spaces, worst relative deviation {worst:.2e}, {dt:.1f}s"


@criterion(2, "associativity and identity, coefficient-exact")
def c2():
    vecs = {}
    for n in range(4):
        for v in itertools.product((-1.0, 0.0, 1.0), repeat=n):
            fv = FiniteVector(v)
            vecs[tuple(fv.to_list())] = fv
    vecs = list(vecs.values())
    e1 = basis_vector(1)
    count = 0
    for a in vecs:
        check(tensor_mul(e1, a) == a and tensor_mul(a, e1) == a, f"identity fails at {a}")
        for b in vecs:
            ab = tensor_mul(a, b)
            for c in vecs:
                check(tensor_mul(ab, c) == tensor_mul(a, tensor_mul(b, c)), f"associativity fails at {a},{b},{c}")
                count += 1
    rng = np.random.default_rng(2)
    for _ in range(1000):
        a, b, c = (FiniteVector(rng.integers(-9, 10, size=int(rng.integers(0, 6))).astype(float)) for _ in range(3))
        check(tensor_mul(tensor_mul(a, b), c) == tensor_mul(a, tensor_mul(b, c)), f"associativity fails at {a},{b},{c}")
        check(tensor_mul(e1, a) == a == tensor_mul(a, e1), f"identity fails at {a}")
    return f"{len(vecs)} distinct {{-1,0,1}} vectors ({count} triples) + 1000 random triples"


@criterion(3, "multinomial expansion equals iterated power")
def c3():
    rng = np.random.default_rng(3)
    for i in range(100):
        m = 1 + i % 3
        a = rng.integers(-5, 6, size=m).astype(float)
        a[-1] = rng.choice([-1.0, 1.0]) * rng.integers(1, 6)
        a = FiniteVector(a)
        for n in range(1, 5):
            check(multinomial_power(a, n) == power(a, n), f"mismatch at a={a.to_list()}, n={n}")
    return "100 vectors, m <= 3, n <= 4"


@criterion(4, "power condition ratios are 1 on lp")
def c4():
    rng = np.random.default_rng(4)
    worst = 0.0
    for p in P_VALUES:
        o = oracle_for(f"lp:p={p:g}")
        for _ in range(100):
            a = rng.standard_normal(int(rng.integers(1, 4)))
            prof = power_condition_profile(o, a, 5, size_cap=10**4)
            dev = max(abs(r - 1) for r in prof)
            worst = max(worst, dev)
            check(dev <= 1e-9, f"p={p}: deviation {dev:.3e} at {a.tolist()}")
    return f"4 x 100 vectors, n <= 5, worst deviation {worst:.2e}"


@criterion(5, "Tsirelson norm matches frozen brute-force values; forced bounds")
def c5():
    t0 = time.perf_counter()
    for n, lam in enumerate(FX["lambda"][:12], start=1):
        got = tsirelson_norm(np.ones(n))
        check(got == lam, f"lambda_T({n}) = {got!r}, frozen {lam!r}")
    for rec in FX["random_vectors"]:
        got = tsirelson_norm(rec["x"])
        check(got == rec["norm"], f"norm{rec['x']} = {got!r}, frozen {rec['norm']!r}")
        check(max(abs(v) for v in rec["x"]) <= got, f"sup bound fails at {rec['x']}")
    rng = np.random.default_rng(5)
    for _ in range(200):
        x = rng.standard_normal(int(rng.integers(1, 65)))
        check(np.max(np.abs(x)) <= tsirelson_norm(x), "sup bound fails on a random vector")
    for n in range(1, 65):
        lam = tsirelson_norm(np.ones(n))
        check(0.5 * (n // 2) <= lam <= n, f"lambda_T({n}) = {lam} outside [theta*floor(n/2), n]")
    dt = time.perf_counter() - t0
    check(dt < 60, f"runtime {dt:.1f}s >= 60s")
    return f"12 indicator + 50 vector values exact, bounds for n <= 64, {dt:.1f}s"


@criterion(6, "exponent fit recovers p; c0 gives the infinite sentinel")
def c6():
    out = []
    for p in P_VALUES:
        o = oracle_for(f"lp:p={p:g}")
        f = fit_exponent([o.norm(np.ones(n)) for n in range(1, 65)])
        check(abs(f.p_hat - p) <= 0.01, f"p={p}: p_hat={f.p_hat}")
        out.append(f"{f.p_hat:.6g}")
    f = fit_exponent([oracle_for("c0").norm(np.ones(n)) for n in range(1, 65)])
    check(math.isinf(f.p_hat), f"c0: p_hat={f.p_hat}")
    return f"p_hat = {', '.join(out)}; c0 -> inf"


@criterion(7, "bidemocracy profile is 1 on lp; pairing bound on every catalog space")
def c7():
    for p in P_VALUES:
        prof = bidemocracy_profile(oracle_for(f"lp:p={p:g}"), 16)
        for n, (lo, hi) in enumerate(prof, start=1):
            check(abs(lo - 1) <= 1e-9 and abs(hi - 1) <= 1e-9, f"lp:p={p} n={n}: [{lo}, {hi}]")
    for space in CATALOG:
        t = fundamental_table(oracle_for(space), 16, restarts=8)
        for i in range(16):
            check(t.phi[i] * t.phi_star[i][0] >= (i + 1) * (1 - 1e-12),
                  f"{space} n={i + 1}: Phi*Phi*_lb = {t.phi[i] * t.phi_star[i][0]}")
    return f"lp profiles exact for n <= 16; pairing bound on {len(CATALOG)} spaces"


@criterion(8, "democracy, ccu and quasi-greedy constants")
def c8():
    for space in SYMMETRIC:
        r = democracy_constant(oracle_for(space), 12)
        check(r.notes == "exhaustive" and abs(r.certified_lower - 1) <= 1e-12, f"{space}: Delta={r.certified_lower}")
    for space in UNCONDITIONAL:
        r = ccu_constant(oracle_for(space), 12)
        check(abs(r.certified_lower - 1) <= 1e-12, f"{space}: C={r.certified_lower}")
    S = oracle_for("summing")
    c = ccu_constant(S, 4)
    check(c.certified_lower >= 4 and c.replay(S), f"summing ccu at n=4: {c.certified_lower}")
    ks = []
    for k in range(1, 7):
        x = alternating_qg_vector(k)
        best = max(_replay_qg(S, x.tolist(), float(d)) for d in np.unique(np.abs(x)))
        check(best >= k + 1, f"alternating length {2 * k + 1}: ratio {best} < {k + 1}")
        ks.append(f"{best:.3f}")
    q = quasi_greedy_constant(S, "gaussian:n=13", trials=20, seed=0)
    check(q.certified_lower >= 7 and q.replay(S), f"summing quasi-greedy report {q.certified_lower}")
    return f"Delta=1 on {len(SYMMETRIC)} symmetric, C=1 on {len(UNCONDITIONAL)}; summing C(4)={c.certified_lower:g}, qg ratios {ks}"


@criterion(9, "l1 sign-average criterion values")
def c9():
    o1, o2 = oracle_for("lp:p=1"), oracle_for("lp:p=2")
    for n in range(1, 17):
        m1, _ = sign_average(o1, n)
        check(m1 / n == 1.0, f"l1 n={n}: {m1 / n!r}")
        m2, _ = sign_average(o2, n)
        check(m2 == math.sqrt(n), f"l2 n={n}: average {m2!r} != sqrt(n)")
        check(abs(m2 / n - n**-0.5) <= 2 * sys.float_info.epsilon, f"l2 n={n}: {m2 / n!r}")
    s, _ = sign_average(oracle_for("summing"), 2)
    check(s / 2 == 0.75, f"summing n=2: {s / 2!r}")
    return "l1 = 1 and l2 = n^-1/2 for n <= 16 (exhaustive); summing n=2 -> 0.75"


@criterion(10, "lambda grid is 1 on lp; Tsirelson grid matches frozen values")
def c10():
    for p in P_VALUES:
        g = lambda_grid(oracle_for(f"lp:p={p:g}"), 8, 8)
        check(np.max(np.abs(g - 1)) <= 1e-9, f"lp:p={p}: max deviation {np.max(np.abs(g - 1))}")
    g = lambda_grid(oracle_for("tsirelson"), 8, 8)
    check(g.tolist() == FX["lambda_grid"], "Tsirelson grid differs from frozen fixture")
    return "lp grids within 1e-9; Tsirelson 8x8 grid exact"


@criterion(11, "shift and difference identities, coefficient-exact")
def c11():
    rng = np.random.default_rng(11)
    d = FiniteVector([-1.0, 1.0])
    for i in range(100):
        m, n = int(rng.integers(1, 6)), int(rng.integers(1, 9))
        a = rng.standard_normal(n)
        shifted = tensor_mul(basis_vector(m + 1), FiniteVector(a))
        explicit = np.zeros(m * n + n)
        explicit[m * n:] = a
        check(shifted == FiniteVector(explicit), f"shift identity fails at m={m}, a={a.tolist()}")
    for i in range(100):
        a = rng.standard_normal(int(rng.integers(1, 9)))
        diff = np.zeros(2 * a.size)
        diff[0::2], diff[1::2] = -a, a  # sum a_i (e_{2i} - e_{2i-1})
        check(tensor_mul(FiniteVector(a), d) == FiniteVector(diff), f"difference identity fails at {a.tolist()}")
    return "100 + 100 seeded vectors"


@criterion(12, "Elton subset search")
def c12():
    for n in range(1, 11):
        r = elton_subset_search(oracle_for("lp:p=1"), n, 1.0)
        check(r.subset == tuple(range(1, n + 1)), f"l1 n={n}: {r.subset}")
    for n in (4, 6, 8):
        r = elton_subset_search(oracle_for("c0"), n, 0.9)
        check(r.size == 1, f"c0 n={n}: size {r.size}")
    fx = FX["elton"]
    r = elton_subset_search(oracle_for("tsirelson"), 8, 0.45)
    check(r.size == fx["size"] and list(r.subset) in fx["subsets"], f"Tsirelson: {r.subset} vs {fx['subsets']}")
    check(abs(r.constant - fx["constants"][str(list(r.subset))]) <= 1e-6, f"Tsirelson constant {r.constant}")
    return f"l1 full set for n <= 10; c0 |A| = 1; Tsirelson A = {set(r.subset)} (delta1 = {r.delta1:g})"


@criterion(13, "suite determinism, exit codes and runtime")
def c13(tmp=None):
    import tempfile

    tmp = Path(tmp or tempfile.mkdtemp())
    runtimes = {}
    reports = []
    for i in range(2):
        out = tmp / f"tp{i}.json"
        t0 = time.perf_counter()
        code = cli_main(["suite", "--space", "tp:p=2,theta=0.5", "--seed", "7", "--out", str(out)])
        runtimes[f"tp#{i}"] = time.perf_counter() - t0
        check(code == 0, f"suite exit code {code}")
        d = json.loads(out.read_text())
        check("timestamp" in d, "report has no timestamp field")
        d.pop("timestamp")
        reports.append(json.dumps(d, sort_keys=True))
    check(reports[0] == reports[1], "reports differ outside the timestamp field")
    t0 = time.perf_counter()
    code = cli_main(["suite", "--space", "lp:p=2", "--out", str(tmp / "lp.json"), "--assert-class", "lp"])
    runtimes["lp:p=2"] = time.perf_counter() - t0
    check(code == 0, f"lp:p=2 --assert-class lp exited {code}")
    t0 = time.perf_counter()
    code = cli_main(["suite", "--space", "c0", "--out", str(tmp / "c0.json"), "--assert-class", "lp"])
    runtimes["c0"] = time.perf_counter() - t0
    check(code == 1, f"c0 --assert-class lp exited {code}")
    for space in ("tsirelson", "lorentz", "summing"):
        t0 = time.perf_counter()
        cli_main(["suite", "--space", space, "--out", str(tmp / f"{space}.json")])
        runtimes[space] = time.perf_counter() - t0
    slow = {k: v for k, v in runtimes.items() if v >= 300}
    check(not slow, f"suite runtime over 5 min: {slow}")
    return "identical reports; exit codes 0/1; max suite runtime " + f"{max(runtimes.values()):.1f}s"


def _run(number):
    title, fn = CRITERIA[number]
    try:
        detail = fn()
        return True, f"{title}: {detail}"
    except Failed as exc:
        return False, f"{title}: {exc}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    from conftest import ACCEPTANCE_LINES

    ok, detail = _run(number)
    ACCEPTANCE_LINES[number] = (ok, detail)
    with capsys.disabled():
        print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    results = [(_run(k), k) for k in sorted(CRITERIA)]
    for (ok, detail), k in results:
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(0 if all(ok for (ok, _), _ in results) else 1)
