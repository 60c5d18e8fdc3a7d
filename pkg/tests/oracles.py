"""Brute-force reference computations used to freeze test fixtures.

Nothing here imports the dynamic programs under test.  The Tsirelson
references enumerate admissible families directly: over arbitrary subsets of
the support (``set_family_norm``) or over families of successive intervals
with gaps (``interval_family_norm``, used where subsets are too many).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def _successive_families(elems, max_blocks):
    """Yield lists of nonempty blocks ``B_1 < B_2 < ...`` drawn from ``elems``.

    ``elems`` is a sorted tuple; elements may be skipped.  At most
    ``max_blocks`` blocks.
    """
    n = len(elems)

    def rec(start, blocks):
        if blocks:
            yield list(blocks)
        if len(blocks) >= max_blocks:
            return
        for i in range(start, n):
            # next block begins at elems[i]; choose its other members among
            # later elements, then continue after its max.
            rest = elems[i + 1 :]
            for r in range(len(rest) + 1):
                for extra in itertools.combinations(rest, r):
                    block = (elems[i],) + extra
                    last = elems.index(block[-1])
                    blocks.append(block)
                    yield from rec(last + 1, blocks)
                    blocks.pop()

    yield from rec(0, [])


def set_family_norm(x, theta=0.5):
    """Tsirelson norm by enumerating admissible families of arbitrary subsets."""
    x = [abs(float(v)) for v in x]

    @lru_cache(maxsize=None)
    def norm(support):
        if not support:
            return 0.0
        best = max(x[i - 1] for i in support)
        for fam in _successive_families(support, max_blocks=len(support)):
            k = len(fam)
            if k > fam[0][0]:
                continue
            if k == 1 and fam[0] == support:
                continue
            best = max(best, theta * sum(norm(b) for b in fam))
        return best

    supp = tuple(i + 1 for i, v in enumerate(x) if v != 0)
    return norm(supp)


def interval_family_norm(x, theta=0.5):
    """Tsirelson norm over families of successive intervals, gaps allowed.

    Used for indicator vectors longer than the subset enumeration can handle.
    """
    x = [abs(float(v)) for v in x]
    n = len(x)

    @lru_cache(maxsize=None)
    def norm(lo, hi):
        if lo > hi:
            return 0.0

        @lru_cache(maxsize=None)
        def tail(start, used, first):
            # best total of further intervals inside [start, hi]
            best = 0.0
            if used >= first:
                return best
            for a in range(start, hi + 1):
                for b in range(a, hi + 1):
                    best = max(best, norm(a, b) + tail(b + 1, used + 1, first))
            return best

        best = max(x[lo - 1 : hi])
        for s in range(lo, hi + 1):
            for e in range(s, hi + 1):
                if s == lo and e == hi:
                    continue
                best = max(best, theta * (norm(s, e) + tail(e + 1, 1, s)))
        return best

    return norm(1, n) if n else 0.0


def brute_max_subsets(fn, N, n):
    """max of fn(A) over all A of {1..N} with 1 <= |A| <= n."""
    best = -np.inf
    for k in range(1, n + 1):
        for A in itertools.combinations(range(1, N + 1), k):
            best = max(best, fn(A))
    return best


def indicator_norms(n_max, theta=0.5):
    """``lambda_T(n)`` for ``n <= n_max`` from a recursion on interval indicators."""
    return [_interval_indicator(1, n, theta) for n in range(1, n_max + 1)]


def _interval_indicator(a, b, theta=0.5):
    """Tsirelson norm of the indicator of the interval ``[a, b]``.

    For indicators, gaps never help (the norm is monotone in the set), so a
    family can be taken to tile ``[s, b]`` for some start ``s``; the family
    may use at most ``s`` pieces.
    """
    import sys

    sys.setrecursionlimit(max(10000, sys.getrecursionlimit()))
    return _ind_f(a, b, theta)


@lru_cache(maxsize=None)
def _ind_f(a, b, theta):
    best = 1.0
    for s in range(a, b + 1):
        for e in range(s, b + 1):
            if (s, e) == (a, b):
                continue
            # first piece [s, e], then at most s-1 more pieces tiling [e+1, b]
            best = max(best, theta * (_ind_f(s, e, theta) + _ind_tile(e + 1, b, s - 1, theta)))
    return best


@lru_cache(maxsize=None)
def _ind_tile(s, b, k, theta):
    if s > b or k == 0:
        return 0.0
    return max(_ind_f(s, e, theta) + _ind_tile(e + 1, b, k - 1, theta) for e in range(s, b + 1))


def norming_functionals(n, theta=0.5):
    """All nonnegative Tsirelson norming functionals supported in ``{1..n}``.

    Closure of ``{e_i}`` under ``f_1, ..., f_k -> theta * (f_1 + ... + f_k)``
    for successive supports with ``k <= min supp f_1``.
    """
    basis = [tuple(1.0 if j == i else 0.0 for j in range(n)) for i in range(n)]
    funcs = set(basis)

    def span(g):
        nz = [i for i, v in enumerate(g) if v]
        return nz[0] + 1, nz[-1] + 1

    while True:
        by_first = {}
        for g in funcs:
            by_first.setdefault(span(g)[0], []).append(g)
        new = set()

        def extend(acc, last, count, limit):
            if count >= 2:
                new.add(tuple(theta * v for v in acc))
            if count == limit:
                return
            for first in range(last + 1, n + 1):
                for g in by_first.get(first, []):
                    extend([x + y for x, y in zip(acc, g)], span(g)[1], count + 1, limit)

        for g in funcs:
            lo, hi = span(g)
            extend(list(g), hi, 1, lo)
        grown = funcs | new
        if len(grown) == len(funcs):
            return sorted(funcs)
        funcs = grown
