"""Finitely supported coefficient sequences and the block multiplication on them.

A :class:`FiniteVector` stores the coefficients ``a_1, ..., a_n`` of
``sum a_i e_i`` against an abstract basis; :class:`Functional` stores the
coefficients of ``sum b_i e_i*`` against the biorthogonal functionals.  Both
are trimmed of trailing zeros on construction, so ``len(v)`` is the index of the
last nonzero coefficient.

The product ``tensor_mul(a, b)`` places the block ``a_i * (b_1, ..., b_m)`` at
positions ``(i-1)m + 1, ..., im``.  It is associative with identity ``e_1``
but not commutative.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

__all__ = [
    "FiniteVector",
    "Functional",
    "PowerSizeError",
    "DEFAULT_SIZE_CAP",
    "tensor_mul",
    "power",
    "multinomial_power",
    "composition_index_sets",
    "indicator",
    "indicator_of_set",
    "basis_vector",
    "pair",
]

DEFAULT_SIZE_CAP = 10**7


class PowerSizeError(ValueError):
    """Raised when a product would exceed the configured coefficient cap."""


def _as_coeff_array(coeffs):
    arr = np.array(coeffs, copy=True)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.dtype == object:
        # Fractions and other exact scalars are kept as Python objects.
        pass
    elif arr.dtype.kind in "biuf":
        arr = arr.astype(np.float64)
    else:
        raise TypeError(f"unsupported coefficient dtype {arr.dtype}")
    nz = np.flatnonzero(arr != 0)
    arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
    arr.flags.writeable = False
    return arr


class _Coefficients:
    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        self._c = _as_coeff_array(coeffs)

    @classmethod
    def _wrap(cls, arr):
        obj = cls.__new__(cls)
        obj._c = _as_coeff_array(arr)
        return obj

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only trimmed coefficient array."""
        return self._c

    @property
    def trimmed_length(self) -> int:
        return int(self._c.shape[0])

    def __len__(self):
        return self.trimmed_length

    def is_zero(self) -> bool:
        return self._c.shape[0] == 0

    def to_list(self) -> list:
        return [float(x) if not isinstance(x, float) else x for x in self._c.tolist()]

    def padded(self, length: int) -> np.ndarray:
        """Coefficients as a float array zero-padded to ``length``."""
        if length < self.trimmed_length:
            raise ValueError("padding length shorter than support")
        out = np.zeros(length)
        out[: self.trimmed_length] = np.asarray(self._c, dtype=float)
        return out

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash((type(self).__name__, tuple(self._c.tolist())))

    def __repr__(self):
        body = ", ".join(repr(x) for x in self._c.tolist())
        return f"{type(self).__name__}([{body}])"


class FiniteVector(_Coefficients):
    """Finitely supported vector ``sum_i a_i e_i``."""

    __slots__ = ()


class Functional(_Coefficients):
    """Finitely supported functional ``sum_i b_i e_i*``."""

    __slots__ = ()


def _check_same_kind(a, b):
    if type(a) is not type(b):
        raise TypeError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")


def tensor_mul(a, b):
    """Block product of two vectors (or two functionals).

    With ``n = len(a)`` and ``m = len(b)`` the result has length ``n*m`` and
    coefficient ``a_i * b_j`` at position ``(i-1)*m + j``.  A zero factor on
    either side gives zero.
    """
    _check_same_kind(a, b)
    if a.is_zero() or b.is_zero():
        return type(a)._wrap(a.coeffs[:0])
    return type(a)._wrap(np.multiply.outer(a.coeffs, b.coeffs).reshape(-1))


def power(a, n: int, *, size_cap: int = DEFAULT_SIZE_CAP):
    """``a ⊗ a ⊗ ... ⊗ a`` with ``n`` factors, multiplied left to right."""
    if int(n) != n or n < 1:
        raise ValueError(f"power exponent must be a positive integer, got {n!r}")
    n = int(n)
    if len(a) > 1 and n * math.log(len(a)) > math.log(size_cap):
        raise PowerSizeError(f"length {len(a)}**{n} exceeds size cap {size_cap}")
    out = a
    for _ in range(n - 1):
        out = tensor_mul(out, a)
    return out


def _compositions(n, m):
    """All tuples of ``m`` nonnegative ints summing to ``n``."""
    for bars in itertools.combinations(range(n + m - 1), m - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(n + m - 1 - prev - 1)
        yield tuple(comp)


def _letter_counts(m: int, n: int) -> np.ndarray:
    """Letter-count vector of every word in ``{0..m-1}^n``, in base-m order.

    Row ``k`` belongs to position ``k+1``; the first letter is the most
    significant digit, matching left-to-right iteration of ``tensor_mul``.
    """
    total = m**n
    idx = np.arange(total, dtype=np.int64)
    counts = np.zeros((total, m), dtype=np.int64)
    for _ in range(n):
        counts[np.arange(total), idx % m] += 1
        idx //= m
    return counts


def composition_index_sets(m: int, n: int) -> dict:
    """Map each composition ``(i_1..i_m)`` of ``n`` to its 1-based position set in ``{1..m^n}``."""
    counts = _letter_counts(m, n)
    out: dict = {}
    for pos, row in enumerate(map(tuple, counts.tolist()), start=1):
        out.setdefault(row, []).append(pos)
    return out


def multinomial_power(a, n: int, *, size_cap: int = DEFAULT_SIZE_CAP):
    """The ``n``-th power built from the multinomial expansion.

    Each composition ``(i_1, ..., i_m)`` of ``n`` contributes the value
    ``a_1**i_1 * ... * a_m**i_m`` on every position whose base-``m`` word has
    that letter count.  Agrees with :func:`power` coefficient-wise.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"power exponent must be a positive integer, got {n!r}")
    n = int(n)
    m = len(a)
    if m == 0:
        raise ValueError("multinomial_power needs a nonzero vector")
    if m > 1 and n * math.log(m) > math.log(size_cap):
        raise PowerSizeError(f"length {m}**{n} exceeds size cap {size_cap}")
    coeffs = a.coeffs
    counts = _letter_counts(m, n)
    # Encode each letter-count row as a single integer key in base (n+1).
    weights = (n + 1) ** np.arange(m, dtype=np.int64)
    keys = counts @ weights
    out = np.empty(m**n, dtype=coeffs.dtype)
    for comp in _compositions(n, m):
        value = coeffs[0] ** comp[0]
        for j in range(1, m):
            value = value * coeffs[j] ** comp[j]
        key = int(np.dot(comp, weights))
        out[keys == key] = value
    return type(a)._wrap(out)


def indicator(n: int) -> FiniteVector:
    """``e_1 + ... + e_n``."""
    if n < 0:
        raise ValueError("indicator length must be nonnegative")
    return FiniteVector(np.ones(int(n)))


def indicator_of_set(indices) -> FiniteVector:
    """Sum of ``e_i`` over a finite set of 1-based indices."""
    idx = sorted(set(int(i) for i in indices))
    if not idx:
        return FiniteVector(())
    if idx[0] < 1:
        raise ValueError("basis indices start at 1")
    c = np.zeros(idx[-1])
    c[np.array(idx) - 1] = 1.0
    return FiniteVector(c)


def basis_vector(i: int, kind=FiniteVector):
    """The unit vector ``e_i`` (or ``e_i*`` when ``kind`` is :class:`Functional`)."""
    if i < 1:
        raise ValueError("basis indices start at 1")
    c = np.zeros(int(i))
    c[-1] = 1.0
    return kind(c)


def pair(f: Functional, a: FiniteVector):
    """Duality pairing ``f(a) = sum f_i a_i`` over the common support."""
    k = min(len(f), len(a))
    if k == 0:
        return 0.0
    fc, ac = f.coeffs[:k], a.coeffs[:k]
    if fc.dtype == object or ac.dtype == object:
        return sum(x * y for x, y in zip(fc.tolist(), ac.tolist()))
    return math.fsum((fc * ac).tolist())
