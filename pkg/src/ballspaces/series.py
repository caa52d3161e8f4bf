"""Truncated multi-index power series on the unit ball of C^n.

A :class:`TaylorPolynomial` stores the coefficients ``a_m`` of
``f(z) = sum_m a_m z^m`` sparsely, keyed by multi-indices ``m`` (tuples of
nonnegative ints), together with an explicit truncation degree ``D``.
Everything here is immutable; operations return new objects.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

MultiIndex = tuple[int, ...]

#: coefficients smaller than this (in modulus) are dropped
DROP_TOL = 1e-300
#: points with |z| >= 1 - BALL_MARGIN are rejected
BALL_MARGIN = 1e-14


class SeriesFormatError(ValueError):
    """Raised when a serialized series is malformed."""

    def __init__(self, message: str, term_index: int | None = None):
        if term_index is not None:
            message = f"term {term_index}: {message}"
        super().__init__(message)
        self.term_index = term_index


# ---------------------------------------------------------------------------
# multi-indices
# ---------------------------------------------------------------------------

def mi_abs(m: Sequence[int]) -> int:
    return sum(m)


def mi_log_factorial(m: Sequence[int]) -> float:
    """``log(m!)`` for a multi-index, safe for arbitrarily large entries."""
    return math.fsum(math.lgamma(mi + 1) for mi in m)


def mi_factorial(m: Sequence[int]) -> float:
    """``m! = m_1! ... m_n!``.

    Exact integer arithmetic for ``|m| <= 20``; above that the value is
    formed from log-factorials (``inf`` only if the true value overflows).
    """
    if sum(m) <= 20:
        return float(math.prod(math.factorial(mi) for mi in m))
    lf = mi_log_factorial(m)
    return math.exp(lf) if lf < 709.0 else math.inf


@lru_cache(maxsize=None)
def multinomial(m: MultiIndex) -> float:
    """The multinomial coefficient ``|m|! / m!`` as a correctly rounded float."""
    k = sum(m)
    if k <= 1000:
        q = math.factorial(k)
        for mi in m:
            q //= math.factorial(mi)
        return float(q)
    return math.exp(math.lgamma(k + 1) - mi_log_factorial(m))


def multi_indices(n: int, k: int) -> Iterator[MultiIndex]:
    """All ``m`` of length ``n`` with ``|m| = k``, in lexicographic order."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in multi_indices(n - 1, k - first):
            yield (first,) + rest


def multi_indices_upto(n: int, degree: int) -> Iterator[MultiIndex]:
    for k in range(degree + 1):
        yield from multi_indices(n, k)


def _order_key(m: MultiIndex):
    # ascending |m|, then lexicographic (largest leading exponent first)
    return (sum(m), tuple(-mi for mi in m))


def unit_index(n: int, i: int) -> MultiIndex:
    return tuple(1 if j == i else 0 for j in range(n))


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BallPoint:
    """A point of the open unit ball ``B_n``."""

    coords: tuple[complex, ...]

    def __init__(self, coords: Iterable[complex]):
        c = tuple(complex(x) for x in coords)
        if not c:
            raise ValueError("a ball point needs at least one coordinate")
        r2 = math.fsum(abs(x) ** 2 for x in c)
        if r2 >= (1.0 - BALL_MARGIN) ** 2:
            raise ValueError(f"point {c} is not inside the unit ball (|z|^2 = {r2})")
        object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def norm2(self) -> float:
        return math.fsum(abs(x) ** 2 for x in self.coords)

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm2)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype or complex)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def as_coords(z) -> tuple[complex, ...]:
    if isinstance(z, BallPoint):
        return z.coords
    if np.isscalar(z):
        return (complex(z),)
    return tuple(complex(x) for x in z)


def herm_pair(z, w) -> complex:
    """``<z, w> = sum_i z_i conj(w_i)``; accepts ball or boundary points."""
    zc, wc = as_coords(z), as_coords(w)
    if len(zc) != len(wc):
        raise ValueError(f"dimension mismatch: {len(zc)} vs {len(wc)}")
    return sum((a * b.conjugate() for a, b in zip(zc, wc)), 0j)


def monomial_value(coords: Sequence[complex], m: MultiIndex) -> complex:
    out = 1 + 0j
    for x, e in zip(coords, m):
        if e:
            out *= x ** e
    return out


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TaylorPolynomial:
    """Truncated Taylor expansion ``sum_{|m| <= degree} a_m z^m``.

    Absent keys mean a zero coefficient.
    """

    n: int
    degree: int
    coeffs: Mapping[MultiIndex, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        clean = {}
        for m, a in self.coeffs.items():
            m = tuple(int(x) for x in m)
            if len(m) != self.n:
                raise ValueError(f"multi-index {m} does not have {self.n} entries")
            if min(m) < 0:
                raise ValueError(f"multi-index {m} has a negative entry")
            if sum(m) > self.degree:
                raise ValueError(f"multi-index {m} exceeds degree {self.degree}")
            a = complex(a)
            if abs(a) >= DROP_TOL:
                clean[m] = a
        object.__setattr__(self, "coeffs", clean)

    # constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, n: int, degree: int = 0) -> TaylorPolynomial:
        return cls(n, degree, {})

    @classmethod
    def constant(cls, c: complex, n: int, degree: int = 0) -> TaylorPolynomial:
        return cls(n, degree, {(0,) * n: c})

    @classmethod
    def monomial(cls, m: Sequence[int], c: complex = 1.0, degree: int | None = None) -> TaylorPolynomial:
        m = tuple(m)
        return cls(len(m), sum(m) if degree is None else degree, {m: c})

    @classmethod
    def coordinate(cls, i: int, n: int, degree: int = 1) -> TaylorPolynomial:
        """The coordinate function ``z_{i+1}`` (``i`` is zero-based)."""
        return cls.monomial(unit_index(n, i), 1.0, degree)

    # basic queries ---------------------------------------------------------

    def __getitem__(self, m) -> complex:
        return self.coeffs.get(tuple(m), 0j)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        terms = ", ".join(f"{m}: {a:.6g}" for m, a in self.items())
        return f"TaylorPolynomial(n={self.n}, degree={self.degree}, {{{terms}}})"

    def items(self) -> list[tuple[MultiIndex, complex]]:
        """Terms in the fixed summation order (ascending ``|m|``, lexicographic)."""
        return [(m, self.coeffs[m]) for m in self._sorted_keys]

    @cached_property
    def _sorted_keys(self) -> list[MultiIndex]:
        return sorted(self.coeffs, key=_order_key)

    @cached_property
    def _arrays(self):
        keys = self._sorted_keys
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.n)
        vals = np.array([self.coeffs[m] for m in keys], dtype=complex)
        return exps, vals

    @property
    def constant_term(self) -> complex:
        return self.coeffs.get((0,) * self.n, 0j)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_order(self) -> int:
        """Largest ``|m|`` actually carrying a nonzero coefficient (-1 if zero)."""
        return max((sum(m) for m in self.coeffs), default=-1)

    def homogeneous_part(self, k: int) -> TaylorPolynomial:
        return TaylorPolynomial(self.n, self.degree, {m: a for m, a in self.coeffs.items() if sum(m) == k})

    def orders(self) -> list[int]:
        return sorted({sum(m) for m in self.coeffs})

    def with_degree(self, degree: int) -> TaylorPolynomial:
        """Re-truncate (or widen) to a new degree bound."""
        return TaylorPolynomial(self.n, degree, {m: a for m, a in self.coeffs.items() if sum(m) <= degree})

    def map_orders(self, weight: Callable[[int], float]) -> TaylorPolynomial:
        """Multiply every ``f_k`` by ``weight(k)``: the diagonal operators."""
        cache: dict[int, float] = {}
        out = {}
        for m, a in self.coeffs.items():
            k = sum(m)
            if k not in cache:
                cache[k] = weight(k)
            out[m] = a * cache[k]
        return TaylorPolynomial(self.n, self.degree, out)

    def conj_coeffs(self) -> TaylorPolynomial:
        return TaylorPolynomial(self.n, self.degree, {m: a.conjugate() for m, a in self.coeffs.items()})

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TaylorPolynomial):
            return add(self, other)
        return add(self, TaylorPolynomial.constant(other, self.n, self.degree))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TaylorPolynomial):
            return multiply_truncated(self, other, max(self.degree, other.degree))
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __call__(self, z) -> complex:
        return evaluate(self, z)

    def allclose(self, other: TaylorPolynomial, atol: float = 0.0, rtol: float = 1e-12) -> bool:
        """Coefficientwise comparison ``|a - b| <= atol + rtol * max(|a|, |b|)``."""
        if self.n != other.n:
            return False
        for m in set(self.coeffs) | set(other.coeffs):
            a, b = self[m], other[m]
            if abs(a - b) > atol + rtol * max(abs(a), abs(b)):
                return False
        return True


def _check_dims(f: TaylorPolynomial, g: TaylorPolynomial):
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")


def add(f: TaylorPolynomial, g: TaylorPolynomial) -> TaylorPolynomial:
    _check_dims(f, g)
    out = dict(f.coeffs)
    for m, b in g.coeffs.items():
        out[m] = out.get(m, 0j) + b
    return TaylorPolynomial(f.n, max(f.degree, g.degree), out)


def scale(f: TaylorPolynomial, c: complex) -> TaylorPolynomial:
    c = complex(c)
    return TaylorPolynomial(f.n, f.degree, {m: c * a for m, a in f.coeffs.items()})


def multiply_truncated(f: TaylorPolynomial, g: TaylorPolynomial, degree: int) -> TaylorPolynomial:
    """Cauchy product of ``f`` and ``g`` with every term of order > ``degree`` discarded."""
    _check_dims(f, g)
    out: dict[MultiIndex, complex] = {}
    for m, a in f.items():
        km = sum(m)
        if km > degree:
            continue
        for l, b in g.items():
            if km + sum(l) > degree:
                # g's terms are sorted by order, nothing further fits
                break
            key = tuple(x + y for x, y in zip(m, l))
            out[key] = out.get(key, 0j) + a * b
    return TaylorPolynomial(f.n, degree, out)


def _power_table(z: np.ndarray, max_exp: int) -> np.ndarray:
    # table[i, e] = z_i ** e, built by repeated multiplication
    n = z.shape[-1]
    table = np.ones(z.shape[:-1] + (n, max_exp + 1), dtype=complex)
    for e in range(1, max_exp + 1):
        table[..., e] = table[..., e - 1] * z
    return table


def evaluate(f: TaylorPolynomial, z) -> complex:
    """``f(z)`` for ``z`` in the ball, summed in the fixed order."""
    zc = z.coords if isinstance(z, BallPoint) else BallPoint(as_coords(z)).coords
    if len(zc) != f.n:
        raise ValueError(f"dimension mismatch: series has n={f.n}, point has {len(zc)}")
    if f.is_zero():
        return 0j
    exps, vals = f._arrays
    table = _power_table(np.asarray(zc, dtype=complex), int(exps.max()))
    mon = np.ones(len(vals), dtype=complex)
    for i in range(f.n):
        mon = mon * table[i, exps[:, i]]
    return complex(np.sum(vals * mon))


def evaluate_many(f: TaylorPolynomial, points: np.ndarray) -> np.ndarray:
    """Vectorized evaluation at an array of points of shape ``(P, n)``.

    No ball check; the caller supplies valid points.
    """
    pts = np.asarray(points, dtype=complex).reshape(-1, f.n)
    if f.is_zero():
        return np.zeros(len(pts), dtype=complex)
    exps, vals = f._arrays
    top = int(exps.max())
    out = np.zeros(len(pts), dtype=complex)
    # chunk to keep the (P, terms) intermediate bounded
    step = max(1, 2_000_000 // max(len(vals), 1))
    for start in range(0, len(pts), step):
        chunk = pts[start:start + step]
        table = _power_table(chunk, top)
        mon = np.ones((len(chunk), len(vals)), dtype=complex)
        for i in range(f.n):
            mon *= table[:, i, :][:, exps[:, i]]
        out[start:start + step] = mon @ vals
    return out


# ---------------------------------------------------------------------------
# kernel-type series
# ---------------------------------------------------------------------------

def binomial_series_coeffs(c: float, degree: int) -> list[float]:
    """Coefficients ``Gamma(c+k) / (k! Gamma(c))`` of ``(1-x)^(-c)`` for k <= degree.

    Built by the recurrence ``b_{k+1} = b_k (c+k)/(k+1)``, which terminates
    naturally when ``c`` is zero or a negative integer.
    """
    out = [1.0]
    b = 1.0
    for k in range(degree):
        b *= (c + k) / (k + 1)
        out.append(b)
    return out


def _conj_powers(w: Sequence[complex], degree: int) -> list[list[complex]]:
    table = []
    for x in w:
        xc = complex(x).conjugate()
        row = [1 + 0j]
        for _ in range(degree):
            row.append(row[-1] * xc)
        table.append(row)
    return table


def inner_power_series(weights: Sequence[float], w, degree: int) -> TaylorPolynomial:
    """``sum_k weights[k] <z, w>^k`` expanded in ``z`` via the multinomial formula.

    The coefficient of ``z^m`` is ``weights[|m|] * |m|!/m! * conj(w)^m``.
    Monomials that vanish because ``w`` has zero coordinates are skipped.
    """
    wc = as_coords(w)
    n = len(wc)
    support = [i for i, x in enumerate(wc) if x != 0]
    table = _conj_powers(wc, degree)
    out: dict[MultiIndex, complex] = {}
    for k in range(degree + 1):
        bk = weights[k]
        if bk == 0:
            continue
        if not support:
            if k == 0:
                out[(0,) * n] = complex(bk)
            continue
        for sub in multi_indices(len(support), k):
            m = [0] * n
            for i, e in zip(support, sub):
                m[i] = e
            m = tuple(m)
            cw = 1 + 0j
            for i in support:
                cw *= table[i][m[i]]
            out[m] = bk * multinomial(m) * cw
    return TaylorPolynomial(n, degree, out)


def power_kernel_series(c: float, w, degree: int) -> TaylorPolynomial:
    """Truncated expansion in ``z`` of ``(1 - <z, w>)^(-c)``."""
    c = float(c)
    near = round(c)
    if near <= 0 and c != near and abs(c - near) < 1e-9:
        raise ValueError(f"exponent {c} is numerically indistinguishable from the integer {near}")
    return inner_power_series(binomial_series_coeffs(c, degree), w, degree)


def log_kernel_series(w, degree: int) -> TaylorPolynomial:
    """Truncated expansion of ``1 + log(1 / (1 - <z, w>))``."""
    wc = as_coords(w)
    n = len(wc)
    # k!/(m! k) is formed from exact integers, not as (1/k) * (k!/m!)
    support = [i for i, x in enumerate(wc) if x != 0]
    table = _conj_powers(wc, degree)
    out: dict[MultiIndex, complex] = {(0,) * n: 1.0}
    if support:
        for k in range(1, degree + 1):
            for sub in multi_indices(len(support), k):
                m = [0] * n
                for i, e in zip(support, sub):
                    m[i] = e
                m = tuple(m)
                cw = 1 + 0j
                for i in support:
                    cw *= table[i][m[i]]
                out[m] = _multinomial_over_order(m) * cw
    return TaylorPolynomial(n, degree, out)


@lru_cache(maxsize=None)
def _multinomial_over_order(m: MultiIndex) -> float:
    # |m|! / (m! |m|), correctly rounded from exact integers
    k = sum(m)
    if k <= 1000:
        q = math.factorial(k)
        for mi in m:
            q //= math.factorial(mi)
        return q / k
    return multinomial(m) / k


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def series_to_dict(f: TaylorPolynomial) -> dict:
    return {
        "n": f.n,
        "degree": f.degree,
        "terms": [{"m": list(m), "re": a.real, "im": a.imag} for m, a in f.items()],
    }


def series_to_json(f: TaylorPolynomial, **kw) -> str:
    return json.dumps(series_to_dict(f), **kw)


def series_from_dict(data) -> TaylorPolynomial:
    if not isinstance(data, dict):
        raise SeriesFormatError("top level must be an object")
    for key in ("n", "degree", "terms"):
        if key not in data:
            raise SeriesFormatError(f"missing key {key!r}")
    n, degree, terms = data["n"], data["degree"], data["terms"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SeriesFormatError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
        raise SeriesFormatError(f"'degree' must be a nonnegative integer, got {degree!r}")
    if not isinstance(terms, list):
        raise SeriesFormatError("'terms' must be a list")
    coeffs: dict[MultiIndex, complex] = {}
    for idx, term in enumerate(terms):
        if not isinstance(term, dict) or "m" not in term:
            raise SeriesFormatError("term must be an object with key 'm'", idx)
        m = term["m"]
        if not isinstance(m, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in m):
            raise SeriesFormatError("'m' must be a list of integers", idx)
        if len(m) != n:
            raise SeriesFormatError(f"'m' has {len(m)} entries, expected {n}", idx)
        if min(m, default=0) < 0:
            raise SeriesFormatError("'m' has a negative entry", idx)
        if sum(m) > degree:
            raise SeriesFormatError(f"|m| = {sum(m)} exceeds degree {degree}", idx)
        try:
            re = float(term.get("re", 0.0))
            im = float(term.get("im", 0.0))
        except (TypeError, ValueError):
            raise SeriesFormatError("'re'/'im' must be numbers", idx) from None
        key = tuple(m)
        coeffs[key] = coeffs.get(key, 0j) + complex(re, im)
    return TaylorPolynomial(n, degree, coeffs)


def series_from_json(text: str) -> TaylorPolynomial:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesFormatError(f"invalid JSON: {exc}") from None
    return series_from_dict(data)


def random_polynomial(rng: np.random.Generator, n: int, degree: int, density: float = 1.0,
                      constant: bool = True) -> TaylorPolynomial:
    """Random complex coefficients (standard normal parts) on a random support."""
    coeffs = {}
    for m in multi_indices_upto(n, degree):
        if not constant and sum(m) == 0:
            continue
        if density >= 1.0 or rng.random() < density:
            coeffs[m] = complex(rng.standard_normal(), rng.standard_normal())
    return TaylorPolynomial(n, degree, coeffs)


__all__ = [
    "BallPoint", "MultiIndex", "SeriesFormatError", "TaylorPolynomial", "add", "binomial_series_coeffs",
    "evaluate", "evaluate_many", "herm_pair", "inner_power_series", "log_kernel_series", "mi_abs",
    "mi_factorial", "mi_log_factorial", "monomial_value", "multi_indices", "multi_indices_upto",
    "multinomial", "multiply_truncated", "power_kernel_series", "random_polynomial", "scale",
    "series_from_dict", "series_from_json", "series_to_dict", "series_to_json", "unit_index",
]
