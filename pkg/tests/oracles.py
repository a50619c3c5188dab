"""Independent reference implementations used only by the tests."""
from __future__ import annotations

import math
import random
from fractions import Fraction as Q
from itertools import combinations

import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from fracfam.core import Family, InstanceParams, LSpec, Fraction, verify_family


def naive_verify(family: Family, params: InstanceParams):
    """Python sets plus rational comparison, all tuples enumerated."""
    members = [set(x) for x in family.to_lists()]
    values = [Q(f.a, f.b) for f in params.l]
    for tup in combinations(range(len(members)), params.r):
        common = set.intersection(*(members[i] for i in tup))
        if not any(len(common) == v * len(members[i]) for v in values for i in tup):
            return False, tup, len(common)
    return True, None, None


def primorial_t(n: int) -> int:
    """Fewest leading primes with product > n, via sympy's prime table."""
    t, prod = 0, 1
    while prod <= n:
        t += 1
        prod *= sympy.prime(t)
    return t


def rank_gf(rows: list[list[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    dom = GF(p)
    mat = DomainMatrix([[dom(v) for v in row] for row in rows], (len(rows), len(rows[0])), dom)
    return mat.rank()


def poly_rows(polys, monomials):
    return [[f.coeffs.get(m, 0) for m in monomials] for f in polys]


FRACTION_POOL = [Fraction(a, b) for b in range(1, 7) for a in range(b) if math.gcd(a, b) == 1]


def random_lspec(rng: random.Random, s: int) -> LSpec:
    return LSpec(tuple(rng.sample(FRACTION_POOL, s)))


def random_valid_family(rng: random.Random, n: int, params: InstanceParams, attempts: int = 200,
                        include_empty: bool = False) -> Family:
    """Grow a family by rejection: a random set joins if validity is kept."""
    sets: list[int] = []
    seen = set()
    for _ in range(attempts):
        size = rng.randint(0, n)
        mask = 0
        for i in rng.sample(range(n), size):
            mask |= 1 << i
        if (mask == 0 and not include_empty) or mask in seen:
            continue
        trial = Family(n, tuple(sets + [mask]))
        if verify_family(trial, params)[0]:
            sets.append(mask)
            seen.add(mask)
    return Family(n, tuple(sets))
