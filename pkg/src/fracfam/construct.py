"""Family generators."""
from __future__ import annotations

from itertools import combinations

from .core import Family, FamilyError, Fraction, LSpec, SubsetMask, check_width


def uniform_fraction_set(s: int) -> LSpec:
    """``{0/s, 1/s, ..., (s-1)/s}`` reduced to lowest terms, duplicates dropped."""
    seen: list[Fraction] = []
    for i in range(s):
        frac = Fraction.reduced(i, s)
        if frac not in seen:
            seen.append(frac)
    return LSpec(tuple(seen))


def all_s_subsets(n: int, s: int) -> tuple[Family, LSpec]:
    check_width(n)
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    masks = []
    for combo in combinations(range(n), s):
        mask = 0
        for i in combo:
            mask |= 1 << i
        masks.append(mask)
    masks.sort()
    return Family(n, tuple(masks)), uniform_fraction_set(s)


def sunflower_family(n: int, core: SubsetMask, petal_count: int, petal_size: int) -> Family:
    """``petal_count`` sets sharing ``core`` plus pairwise disjoint private petals.

    Petals take the smallest elements outside the core, in order.
    """
    check_width(n)
    if core >> n:
        raise FamilyError(f"core has elements outside [1, {n}]")
    free = [i for i in range(n) if not (core >> i) & 1]
    if petal_count * petal_size > len(free):
        raise FamilyError(
            f"need {petal_count * petal_size} free elements for petals, only {len(free)} available"
        )
    sets = []
    for k in range(petal_count):
        mask = core
        for i in free[k * petal_size : (k + 1) * petal_size]:
            mask |= 1 << i
        sets.append(mask)
    return Family(n, tuple(sets))
