"""Instance-level replay of the polynomial-method argument.

For each prime ``p`` drawn from :func:`~fracfam.bounds.select_primes` and each
nonzero residue ``j``, the members with ``|A| = j (mod p)`` are split greedily
into groups of at most ``r - 1`` sets, one polynomial is attached to each
group, and the resulting system is checked for triangularity and rank.
Failures of any check are recorded in the report, never raised.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bounds import binomial_sum, exact_bound, is_prime, select_primes
from .core import Family, InstanceParams, LSpec, SubsetMask, ViolationWitness, mask_elements, verify_family
from .poly import (
    MultilinearPoly,
    build_polynomial,
    dimension,
    evaluate_poly,
    rank_over_fp,
    swallowing_functions,
)

DEFAULT_DIM_CAP = 1 << 22
# dense elimination budget (matrix entries) for the swallowing augmentation
DEFAULT_WORK_CAP = 1 << 24

REFINEMENT_INTERPRETATION = (
    "a collection is violating when the size of its common intersection differs from "
    "(a/b)*|A| for every fraction a/b in L and every member A of the collection"
)


class InvalidFamilyError(ValueError):
    def __init__(self, witness: ViolationWitness):
        super().__init__(
            f"family is not r-wise fractional L-intersecting: members {list(witness.indices)} "
            f"meet in {witness.intersection_size} elements"
        )
        self.witness = witness


class DimensionCapError(ValueError):
    def __init__(self, dim: int, cap: int):
        super().__init__(f"monomial basis dimension {dim} exceeds cap {cap}")
        self.dim = dim
        self.cap = cap


class CoverError(ValueError):
    def __init__(self, index: int):
        super().__init__(f"member {index} is the empty set; every prime divides 0")
        self.index = index


@dataclass(frozen=True)
class ResiduePartition:
    p: int
    classes: dict[int, Family]
    indices: dict[int, tuple[int, ...]]


def partition_by_residue(family: Family, p: int) -> ResiduePartition:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    buckets: dict[int, list[int]] = {j: [] for j in range(p)}
    for i, mask in enumerate(family.sets):
        buckets[mask.bit_count() % p].append(i)
    return ResiduePartition(
        p=p,
        classes={j: family.subfamily(idx) for j, idx in buckets.items()},
        indices={j: tuple(idx) for j, idx in buckets.items()},
    )


@dataclass(frozen=True)
class RefinementGroup:
    members: tuple[SubsetMask, ...]
    member_indices: tuple[int, ...]
    x: SubsetMask
    y: SubsetMask

    @property
    def k(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class RefinementTranscript:
    j: int
    groups: tuple[RefinementGroup, ...]
    interpretation: str = REFINEMENT_INTERPRETATION

    @property
    def m(self) -> int:
        return len(self.groups)


class RefinementError(ValueError):
    def __init__(self, indices: Sequence[int]):
        super().__init__(f"refinement group reached size r at members {list(indices)}")
        self.indices = tuple(indices)


def _fails_all(c: int, sizes: Sequence[int], l: LSpec) -> bool:
    return all(f.b * c != f.a * k for f in l for k in sizes)


def greedy_refine(
    class_family: Family,
    params: InstanceParams,
    j: int = 0,
    indices: Optional[Sequence[int]] = None,
) -> RefinementTranscript:
    """Split a residue class into groups of at most ``r - 1`` members.

    ``indices`` labels the members (default: positions within ``class_family``).
    """
    labels = list(indices) if indices is not None else list(range(class_family.m))
    remaining = list(range(class_family.m))
    sets = class_family.sets
    l, r = params.l, params.r
    groups: list[RefinementGroup] = []

    while remaining:
        violating = None
        for a_pos, a in enumerate(remaining):
            for b in remaining[a_pos + 1 :]:
                c = (sets[a] & sets[b]).bit_count()
                if _fails_all(c, (sets[a].bit_count(), sets[b].bit_count()), l):
                    violating = (a, b)
                    break
            if violating:
                break

        if violating is None:
            # largest cardinality, ties by file order
            best = max(remaining, key=lambda i: (sets[i].bit_count(), -i))
            groups.append(RefinementGroup((sets[best],), (labels[best],), sets[best], sets[best]))
            remaining.remove(best)
            continue

        chosen = list(violating)
        inter = sets[chosen[0]] & sets[chosen[1]]
        grew = True
        while grew:
            grew = False
            for cand in remaining:
                if cand in chosen:
                    continue
                new_inter = inter & sets[cand]
                sizes = [sets[i].bit_count() for i in chosen] + [sets[cand].bit_count()]
                if _fails_all(new_inter.bit_count(), sizes, l):
                    chosen.append(cand)
                    inter = new_inter
                    grew = True
                    if len(chosen) >= r:
                        raise RefinementError([labels[i] for i in chosen])
        members = tuple(sets[i] for i in chosen)
        groups.append(
            RefinementGroup(members, tuple(labels[i] for i in chosen), members[0], inter)
        )
        remaining = [i for i in remaining if i not in chosen]

    return RefinementTranscript(j=j, groups=tuple(groups))


@dataclass(frozen=True)
class TriangularityResult:
    diagonal_failures: tuple[int, ...]
    offdiagonal_failures: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.diagonal_failures and not self.offdiagonal_failures


def group_polynomials(transcript: RefinementTranscript, l: LSpec, p: int, n: int) -> list[MultilinearPoly]:
    return [build_polynomial(g.y, transcript.j, l, p, n) for g in transcript.groups]


def check_triangularity(
    transcript: RefinementTranscript,
    l: LSpec,
    p: int,
    n: int,
    polys: Optional[Sequence[MultilinearPoly]] = None,
) -> TriangularityResult:
    """Check ``g_i(x_i) != 0`` and ``g_i(x_k) = 0`` for every ``i < k``."""
    if polys is None:
        polys = group_polynomials(transcript, l, p, n)
    points = [g.x for g in transcript.groups]
    diag = []
    off = []
    for i, g in enumerate(polys):
        if evaluate_poly(g, points[i]) == 0:
            diag.append(i)
        for k in range(i + 1, len(points)):
            if evaluate_poly(g, points[k]) != 0:
                off.append((i, k))
    return TriangularityResult(tuple(diag), tuple(off))


def cover_assignment(family: Family) -> dict[int, int]:
    """Map each member index to the smallest selected prime not dividing its size."""
    primes = select_primes(family.n).primes
    out = {}
    for i, mask in enumerate(family.sets):
        size = mask.bit_count()
        if size == 0:
            raise CoverError(i)
        out[i] = next(p for p in primes if size % p)
    return out


@dataclass
class SwallowingRecord:
    applicable: bool
    reason: str = ""
    function_count: int = 0
    swallow_rank: Optional[int] = None
    expected_rank: Optional[int] = None
    combined_rank: Optional[int] = None
    improved_bound: Optional[int] = None

    @property
    def full_rank(self) -> Optional[bool]:
        if self.combined_rank is None:
            return None
        return self.combined_rank == self.expected_rank


@dataclass
class CellRecord:
    p: int
    j: int
    class_indices: tuple[int, ...]
    transcript: RefinementTranscript
    triangularity: TriangularityResult
    rank: int
    dimension: int
    sum_bound: int
    swallowing: SwallowingRecord

    @property
    def class_size(self) -> int:
        return len(self.class_indices)


@dataclass
class CertificationReport:
    family: Family
    params: InstanceParams
    primes: tuple[int, ...]
    skipped_primes: list[dict] = field(default_factory=list)
    cells: list[CellRecord] = field(default_factory=list)
    cover: dict[int, int] = field(default_factory=dict)
    uncovered: list[int] = field(default_factory=list)
    exact_bound: Optional[int] = None
    exact_improved: Optional[int] = None

    @property
    def empty_adjustment(self) -> int:
        return len(self.uncovered)

    @property
    def within_bound(self) -> Optional[bool]:
        if self.exact_bound is None:
            return None
        return self.family.m <= self.exact_bound + self.empty_adjustment

    def to_dict(self) -> dict:
        r = self.params.r
        return {
            "n": self.family.n,
            "m": self.family.m,
            "r": r,
            "L": [str(f) for f in self.params.l],
            "s": self.params.l.s,
            "refinement_interpretation": REFINEMENT_INTERPRETATION,
            "primes": list(self.primes),
            "skipped_primes": self.skipped_primes,
            "cells": [_cell_dict(c, r) for c in self.cells],
            "cover": {
                "primes": [self.cover.get(i) for i in range(self.family.m)],
                "uncovered": self.uncovered,
            },
            "bound": {
                "exact_bound": self.exact_bound,
                "exact_improved": self.exact_improved,
                "empty_adjustment": self.empty_adjustment,
                "within_bound": self.within_bound,
            },
        }


def _cell_dict(cell: CellRecord, r: int) -> dict:
    size = cell.class_size
    groups = cell.transcript.groups
    min_groups = -(-size // (r - 1))
    sw = cell.swallowing
    return {
        "p": cell.p,
        "j": cell.j,
        "class_size": size,
        "class_indices": list(cell.class_indices),
        "groups": [
            {
                "members": list(g.member_indices),
                "sets": [mask_elements(x) for x in g.members],
                "x": mask_elements(g.x),
                "y": mask_elements(g.y),
            }
            for g in groups
        ],
        "group_count": len(groups),
        "min_groups": min_groups,
        "group_count_ok": len(groups) >= min_groups,
        "triangularity": {
            "passed": cell.triangularity.passed,
            "diagonal_failures": list(cell.triangularity.diagonal_failures),
            "offdiagonal_failures": [list(x) for x in cell.triangularity.offdiagonal_failures],
        },
        "rank": cell.rank,
        "dimension": cell.dimension,
        "rank_equals_group_count": cell.rank == len(groups),
        "sum_bound": cell.sum_bound,
        "sum_bound_holds": size <= cell.sum_bound,
        "swallowing": {
            "applicable": sw.applicable,
            "reason": sw.reason,
            "function_count": sw.function_count,
            "swallow_rank": sw.swallow_rank,
            "expected_rank": sw.expected_rank,
            "combined_rank": sw.combined_rank,
            "full_rank": sw.full_rank,
            "improved_bound": sw.improved_bound,
            "improved_bound_holds": None if sw.improved_bound is None else size <= sw.improved_bound,
        },
    }


def _swallowing(
    polys: list[MultilinearPoly], n: int, j: int, s: int, p: int, r: int, work_cap: int
) -> SwallowingRecord:
    if not (s <= p - 1 and s + j <= n):
        return SwallowingRecord(False, reason=f"requires s <= p-1 and s + j <= n (s={s}, j={j})")
    count = binomial_sum(n, s - 1) if s > 0 else 0
    if (count + len(polys)) * dimension(n, s) > work_cap:
        return SwallowingRecord(False, reason=f"matrix exceeds work cap {work_cap}", function_count=count)
    extra = swallowing_functions(n, j, s, p)
    swallow_rank = rank_over_fp(extra, s)
    combined = rank_over_fp(polys + extra, s)
    return SwallowingRecord(
        True,
        function_count=len(extra),
        swallow_rank=swallow_rank,
        expected_rank=len(polys) + count,
        combined_rank=combined,
        improved_bound=(r - 1) * math.comb(n, s),
    )


def certify(
    family: Family,
    params: InstanceParams,
    dim_cap: int = DEFAULT_DIM_CAP,
    work_cap: int = DEFAULT_WORK_CAP,
) -> CertificationReport:
    ok, witness = verify_family(family, params)
    if not ok:
        raise InvalidFamilyError(witness)
    n, r, l = family.n, params.r, params.l
    s = l.s
    dim = dimension(n, s)
    if dim > dim_cap:
        raise DimensionCapError(dim, dim_cap)

    sel = select_primes(n)
    report = CertificationReport(family=family, params=params, primes=sel.primes)
    for p in sel.primes:
        bad = [str(f) for f in l if f.b % p == 0]
        if bad:
            report.skipped_primes.append(
                {"p": p, "reason": f"p divides the denominator of {', '.join(bad)}"}
            )
            continue
        part = partition_by_residue(family, p)
        for j in range(1, p):
            idx = part.indices[j]
            transcript = greedy_refine(part.classes[j], params, j=j, indices=idx)
            polys = group_polynomials(transcript, l, p, n)
            tri = check_triangularity(transcript, l, p, n, polys)
            report.cells.append(
                CellRecord(
                    p=p,
                    j=j,
                    class_indices=idx,
                    transcript=transcript,
                    triangularity=tri,
                    rank=rank_over_fp(polys, s),
                    dimension=dim,
                    sum_bound=(r - 1) * dim,
                    swallowing=_swallowing(polys, n, j, s, p, r, work_cap),
                )
            )

    for i, mask in enumerate(family.sets):
        if mask == 0:
            report.uncovered.append(i)
    nonempty = [i for i in range(family.m) if i not in report.uncovered]
    if nonempty:
        sub = cover_assignment(family.subfamily(nonempty))
        report.cover = {nonempty[k]: q for k, q in sub.items()}
    if r >= 3 and 1 <= s <= n:
        bound = exact_bound(n, r, s)
        report.exact_bound = bound.exact_bound
        report.exact_improved = bound.exact_improved
    return report
