"""Multilinear polynomials over GF(p) and rank computation.

A monomial is a variable mask: ``x_A`` for ``A`` a subset of the ``n``
variables.  Products are reduced with ``x_i^2 = x_i``, which is exact on the
Boolean cube, so every function ``{0,1}^n -> GF(p)`` has a unique expansion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .bounds import is_prime
from .core import LSpec, SubsetMask


def monomial_key(mask: int) -> tuple[int, int]:
    """Canonical monomial order: by degree, then numeric mask value."""
    return (mask.bit_count(), mask)


def masks_of_degree_at_most(n: int, d: int) -> list[int]:
    out = []
    for k in range(0, min(d, n) + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            out.append(mask)
    out.sort(key=monomial_key)
    return out


@dataclass(frozen=True)
class MultilinearPoly:
    p: int
    n: int
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        limit = 1 << self.n
        clean = {}
        for mask, c in self.coeffs.items():
            if not 0 <= mask < limit:
                raise ValueError(f"monomial mask {mask:#x} exceeds {self.n} variables")
            c %= self.p
            if c:
                clean[mask] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def constant(cls, p: int, n: int, c: int) -> "MultilinearPoly":
        return cls(p, n, {0: c})

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_compatible(self, other: "MultilinearPoly") -> None:
        if (self.p, self.n) != (other.p, other.n):
            raise ValueError("polynomials over different fields or variable counts")

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return MultilinearPoly(self.p, self.n, out)

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        self._check_compatible(other)
        out: dict[int, int] = {}
        p = self.p
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 | m2
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return MultilinearPoly(p, self.n, out)

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items(), key=lambda kv: monomial_key(kv[0]))


def evaluate_poly(poly: MultilinearPoly, point: SubsetMask) -> int:
    """Evaluate at the 0-1 vector whose support is ``point``."""
    if point >> poly.n:
        raise ValueError(f"point has more than {poly.n} coordinates")
    total = 0
    for mask, c in poly.coeffs.items():
        if mask & point == mask:
            total += c
    return total % poly.p


def evaluate_all(poly: MultilinearPoly) -> np.ndarray:
    """Values at all ``2^n`` cube points, indexed by point mask (subset-sum transform)."""
    n = poly.n
    vals = np.zeros(1 << n, dtype=np.int64)
    for mask, c in poly.coeffs.items():
        vals[mask] = c
    for i in range(n):
        step = 1 << i
        view = vals.reshape(-1, 2 * step)
        view[:, step:] += view[:, :step]
        view %= poly.p
    return vals


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def linear_form(y: SubsetMask, n: int, p: int, scale: int = 1, const: int = 0) -> MultilinearPoly:
    """``scale * <x, y> + const``."""
    coeffs = {1 << i: scale for i in range(n) if (y >> i) & 1}
    coeffs[0] = coeffs.get(0, 0) + const
    return MultilinearPoly(p, n, coeffs)


def build_polynomial(y: SubsetMask, j: int, l: LSpec, p: int, n: int) -> MultilinearPoly:
    """Expand ``prod_{a/b in L} (b <x, y> - a j)`` over GF(p).

    This is the fraction-valued product rescaled by ``prod b``, which is a unit
    in GF(p) provided ``p`` divides no denominator.
    """
    _check_prime(p)
    for frac in l:
        if frac.b % p == 0:
            raise ValueError(f"p={p} divides the denominator of {frac}")
    poly = MultilinearPoly.constant(p, n, 1)
    for frac in l:
        poly = poly * linear_form(y, n, p, scale=frac.b, const=-frac.a * j)
    return poly


def factored_value(y: SubsetMask, j: int, l: LSpec, p: int, point: SubsetMask) -> int:
    dot = (point & y).bit_count()
    value = 1
    for frac in l:
        value = value * (frac.b * dot - frac.a * j) % p
    return value


def swallowing_functions(n: int, j: int, s: int, p: int) -> list[MultilinearPoly]:
    """``x_A * (sum_i x_i - j)`` for every ``|A| <= s - 1``, in canonical order of ``A``."""
    _check_prime(p)
    if not (0 <= s <= p - 1 and 0 <= j <= p - 1 and s + j <= n):
        raise ValueError(
            f"need 0 <= s, j <= p-1 and s + j <= n; got n={n}, j={j}, s={s}, p={p}"
        )
    out = []
    for a_mask in masks_of_degree_at_most(n, s - 1) if s > 0 else []:
        coeffs = {}
        for i in range(n):
            bit = 1 << i
            if not a_mask & bit:
                coeffs[a_mask | bit] = 1
        coeffs[a_mask] = a_mask.bit_count() - j
        out.append(MultilinearPoly(p, n, coeffs))
    return out


def dimension(n: int, s: int) -> int:
    """Number of multilinear monomials of degree at most ``s`` in ``n`` variables."""
    return sum(math.comb(n, l) for l in range(min(s, n) + 1))


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p) by Gaussian elimination."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        below = a[rank + 1 :, col]
        hit = np.nonzero(below)[0] + rank + 1
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, col], a[rank])) % p
        rank += 1
    return rank


def coefficient_matrix(polys: Sequence[MultilinearPoly]) -> tuple[np.ndarray, list[int]]:
    """Rows are polynomials; columns are the monomials that occur, in canonical order."""
    support = sorted({m for f in polys for m in f.coeffs}, key=monomial_key)
    index = {m: k for k, m in enumerate(support)}
    mat = np.zeros((len(polys), len(support)), dtype=np.int64)
    for row, f in enumerate(polys):
        for m, c in f.coeffs.items():
            mat[row, index[m]] = c
    return mat, support


def rank_over_fp(polys: Iterable[MultilinearPoly], s: int) -> int:
    polys = list(polys)
    if not polys:
        return 0
    p, n = polys[0].p, polys[0].n
    for f in polys:
        if (f.p, f.n) != (p, n):
            raise ValueError("polynomials over mixed moduli or variable counts")
        if f.degree > s:
            raise ValueError(f"polynomial of degree {f.degree} exceeds bound {s}")
    mat, _ = coefficient_matrix(polys)
    if mat.shape[1] == 0:
        return 0
    return rank_mod_p(mat, p)
