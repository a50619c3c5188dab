"""Domain types and the exact verifier for r-wise fractional L-intersecting families.

Subsets of the ground set ``[n]`` are plain ``int`` bitmasks: bit ``l`` is set
iff element ``l + 1`` belongs to the set.  All comparisons against fractions
are done by integer cross-multiplication.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

MAX_N = 64

SubsetMask = int


class FractionError(ValueError):
    """Base class for fraction literal errors."""


class FractionSyntaxError(FractionError):
    pass


class ZeroDenominatorError(FractionError):
    pass


class FractionRangeError(FractionError):
    pass


class ReducibleFractionError(FractionError):
    pass


class FamilyError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Fraction:
    """An irreducible fraction ``a/b`` in ``[0, 1)``."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.b <= 0:
            raise ZeroDenominatorError(f"denominator must be positive: {self.a}/{self.b}")
        if not 0 <= self.a < self.b:
            raise FractionRangeError(f"fraction {self.a}/{self.b} is not in [0, 1)")
        if gcd(self.a, self.b) != 1:
            raise ReducibleFractionError(f"fraction {self.a}/{self.b} is not irreducible")

    @classmethod
    def reduced(cls, a: int, b: int) -> "Fraction":
        g = gcd(a, b)
        return cls(a // g, b // g)

    def __str__(self) -> str:
        return f"{self.a}/{self.b}"


_FRACTION_RE = re.compile(r"(\d+)/(\d+)")


def parse_fraction(text: str) -> Fraction:
    """Parse a strict ``a/b`` literal; no normalization is applied."""
    match = _FRACTION_RE.fullmatch(text.strip())
    if match is None:
        raise FractionSyntaxError(f"malformed fraction literal: {text!r}")
    a, b = int(match.group(1)), int(match.group(2))
    if b == 0:
        raise ZeroDenominatorError(f"zero denominator in {text!r}")
    if a >= b:
        raise FractionRangeError(f"fraction {text!r} is not in [0, 1)")
    if gcd(a, b) != 1:
        raise ReducibleFractionError(f"fraction {text!r} is not irreducible")
    return Fraction(a, b)


@dataclass(frozen=True)
class LSpec:
    """The fraction set L, in the order given."""

    fractions: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fractions", tuple(self.fractions))
        if not self.fractions:
            raise FractionError("L must contain at least one fraction")
        if len(set(self.fractions)) != len(self.fractions):
            raise FractionError("L contains a repeated fraction")

    @property
    def s(self) -> int:
        return len(self.fractions)

    def __iter__(self):
        return iter(self.fractions)

    def __len__(self) -> int:
        return len(self.fractions)

    def __str__(self) -> str:
        return ",".join(str(f) for f in self.fractions)

    def issubset(self, other: "LSpec") -> bool:
        return set(self.fractions) <= set(other.fractions)


def parse_lspec(text: str) -> LSpec:
    """Parse a comma-separated list of fraction literals, e.g. ``0/3,1/3,2/3``."""
    return LSpec(tuple(parse_fraction(part) for part in text.split(",")))


def lspec(*literals: str) -> LSpec:
    return LSpec(tuple(parse_fraction(x) for x in literals))


def mask_from_elements(elements: Iterable[int]) -> SubsetMask:
    """Build a mask from 1-based ground-set elements."""
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def mask_elements(mask: SubsetMask) -> list[int]:
    """Return the 1-based elements of ``mask`` in ascending order."""
    out = []
    pos = 1
    while mask:
        if mask & 1:
            out.append(pos)
        mask >>= 1
        pos += 1
    return out


def check_width(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise FamilyError(f"ground-set size n={n} outside supported range 1..{MAX_N}")


@dataclass(frozen=True)
class Family:
    """An ordered list of distinct subsets of ``[n]``."""

    n: int
    sets: tuple[SubsetMask, ...]

    def __post_init__(self) -> None:
        check_width(self.n)
        object.__setattr__(self, "sets", tuple(self.sets))
        limit = 1 << self.n
        seen: dict[int, int] = {}
        for i, mask in enumerate(self.sets):
            if not 0 <= mask < limit:
                raise FamilyError(f"member {i} has elements outside [1, {self.n}]")
            if mask in seen:
                raise FamilyError(f"member {i} duplicates member {seen[mask]}")
            seen[mask] = i

    @classmethod
    def from_lists(cls, n: int, lists: Iterable[Iterable[int]]) -> "Family":
        return cls(n, tuple(mask_from_elements(x) for x in lists))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i: int) -> SubsetMask:
        return self.sets[i]

    @property
    def m(self) -> int:
        return len(self.sets)

    def subfamily(self, indices: Iterable[int]) -> "Family":
        return Family(self.n, tuple(self.sets[i] for i in indices))

    def to_lists(self) -> list[list[int]]:
        return [mask_elements(x) for x in self.sets]


@dataclass(frozen=True)
class InstanceParams:
    r: int
    l: LSpec

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError(f"r must be at least 2, got {self.r}")


@dataclass(frozen=True)
class ViolationWitness:
    indices: tuple[int, ...]
    intersection_size: int


def matches_fraction(intersection_size: int, set_size: int, frac: Fraction) -> bool:
    """True iff ``intersection_size == (a/b) * set_size`` exactly."""
    return frac.b * intersection_size == frac.a * set_size


def allowed_sizes_mask(set_size: int, l: LSpec) -> int:
    """Bitmask over intersection sizes ``c`` with ``c = (a/b) * set_size`` for some a/b in L."""
    bits = 0
    for frac in l:
        num = frac.a * set_size
        if num % frac.b == 0:
            bits |= 1 << (num // frac.b)
    return bits


def check_tuple(family: Family, indices: Sequence[int], params: InstanceParams) -> bool:
    if len(set(indices)) != len(indices):
        raise ValueError(f"duplicate indices in {tuple(indices)}")
    for i in indices:
        if not 0 <= i < family.m:
            raise IndexError(f"index {i} out of range for family of size {family.m}")
    inter = (1 << family.n) - 1
    for i in indices:
        inter &= family.sets[i]
    c = inter.bit_count()
    return any(
        matches_fraction(c, family.sets[i].bit_count(), frac)
        for i in indices
        for frac in params.l
    )


def verify_family(family: Family, params: InstanceParams) -> tuple[bool, Optional[ViolationWitness]]:
    """Check every r-tuple of members; return the lexicographically first failure."""
    r = params.r
    m = family.m
    if m < r:
        return True, None
    sets = family.sets
    allowed = [allowed_sizes_mask(x.bit_count(), params.l) for x in sets]
    full = (1 << family.n) - 1
    prefix: list[int] = []

    def walk(start: int, depth: int, inter: int, ok: int) -> Optional[ViolationWitness]:
        if depth == r - 1:
            # innermost index: tight loop
            for k in range(start, m):
                c = (inter & sets[k]).bit_count()
                if not ((ok | allowed[k]) >> c) & 1:
                    return ViolationWitness(tuple(prefix) + (k,), c)
            return None
        for i in range(start, m - (r - 1 - depth)):
            prefix.append(i)
            found = walk(i + 1, depth + 1, inter & sets[i], ok | allowed[i])
            prefix.pop()
            if found is not None:
                return found
        return None

    witness = walk(0, 0, full, 0)
    return witness is None, witness

