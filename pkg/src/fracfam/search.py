"""Maximum-family search at desk scale.

:func:`branch_and_bound_max` is the workhorse; :func:`naive_max` enumerates
every subfamily and exists to cross-check it on tiny ground sets.
"""
from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .bounds import exact_bound
from .core import Family, InstanceParams, LSpec, allowed_sizes_mask, check_width, verify_family

PROVEN_OPTIMAL = "proven-optimal"
TIME_LIMITED = "time-limited-lower-bound"

NAIVE_MAX_N = 4
_CLOCK_EVERY = 1024


@dataclass(frozen=True)
class SearchConfig:
    n: int
    params: InstanceParams
    include_empty: bool = False
    time_limit: float = 60.0
    deterministic: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        check_width(self.n)
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass(frozen=True)
class SearchResult:
    max_size: int
    witness: Family
    status: str
    nodes_explored: int
    seed: Optional[int] = None


def candidate_sets(n: int, include_empty: bool) -> list[int]:
    """All subsets of ``[n]`` ordered by (cardinality, mask value)."""
    universe = range(0 if include_empty else 1, 1 << n)
    return sorted(universe, key=lambda m: (m.bit_count(), m))


def naive_max(config: SearchConfig) -> SearchResult:
    """Exhaustive search; the witness is the lexicographically first maximum family."""
    if config.n > NAIVE_MAX_N:
        raise ValueError(f"naive search supports n <= {NAIVE_MAX_N}, got {config.n}")
    cands = candidate_sets(config.n, config.include_empty)
    nodes = 0
    for size in range(len(cands), 0, -1):
        for combo in combinations(cands, size):
            nodes += 1
            family = Family(config.n, combo)
            if verify_family(family, config.params)[0]:
                return SearchResult(size, family, PROVEN_OPTIMAL, nodes)
    return SearchResult(0, Family(config.n, ()), PROVEN_OPTIMAL, nodes)


class _Timeout(Exception):
    pass


class _Search:
    def __init__(self, config: SearchConfig):
        self.config = config
        self.r = config.params.r
        self.lspec = config.params.l
        self.cands = candidate_sets(config.n, config.include_empty)
        self.allowed = {c: allowed_sizes_mask(c.bit_count(), self.lspec) for c in self.cands}
        self.full = (1 << config.n) - 1
        self.best: list[int] = []
        self.nodes = 0
        self.deadline = time.monotonic() + config.time_limit

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes % _CLOCK_EVERY == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def _admit(self, tuples: list[tuple[int, int]], s: int) -> bool:
        """Can ``s`` join, given (intersection, allowed-sizes) of each (r-1)-subset?"""
        a_s = self.allowed[s]
        for inter, ok in tuples:
            if not ((ok | a_s) >> (inter & s).bit_count()) & 1:
                return False
        return True

    def _extend(self, layers: list[list[tuple[int, int]]], s: int) -> tuple[list, list]:
        """New layers after adding ``s``; also returns the new (r-1)-subsets that contain ``s``."""
        a_s = self.allowed[s]
        new_layers = [layers[0]]
        fresh_top: list[tuple[int, int]] = []
        for k in range(1, self.r):
            fresh = [(inter & s, ok | a_s) for inter, ok in layers[k - 1]]
            new_layers.append(layers[k] + fresh)
            if k == self.r - 1:
                fresh_top = fresh
        return new_layers, fresh_top

    def _dfs(self, chosen: list[int], layers, cands: list[int]) -> None:
        self._tick()
        if len(chosen) > len(self.best):
            self.best = list(chosen)
        if len(chosen) + len(cands) <= len(self.best):
            return
        for pos, s in enumerate(cands):
            if len(chosen) + len(cands) - pos <= len(self.best):
                return
            new_layers, fresh = self._extend(layers, s)
            # forward check: later candidates must survive the tuples that contain s
            rest = [c for c in cands[pos + 1 :] if self._admit(fresh, c)]
            chosen.append(s)
            self._dfs(chosen, new_layers, rest)
            chosen.pop()

    def run(self) -> SearchResult:
        empty_layers = [[(self.full, 0)]] + [[] for _ in range(self.r - 1)]
        # root symmetry: the first member may be taken to be {1..k}
        roots = []
        seen_sizes = set()
        for pos, c in enumerate(self.cands):
            k = c.bit_count()
            if k not in seen_sizes:
                seen_sizes.add(k)
                roots.append(pos)
        if not self.config.deterministic:
            random.Random(self.config.seed).shuffle(roots)
        status = PROVEN_OPTIMAL
        try:
            for pos in roots:
                s = self.cands[pos]
                layers, fresh = self._extend(empty_layers, s)
                rest = [c for c in self.cands[pos + 1 :] if self._admit(fresh, c)]
                self._dfs([s], layers, rest)
        except _Timeout:
            status = TIME_LIMITED
        witness = Family(self.config.n, tuple(self.best))
        return SearchResult(
            len(self.best),
            witness,
            status,
            self.nodes,
            seed=None if self.config.deterministic else self.config.seed,
        )


def branch_and_bound_max(config: SearchConfig) -> SearchResult:
    return _Search(config).run()


CSV_HEADER = ["n", "max_size", "status", "exact_bound", "ratio"]


@dataclass(frozen=True)
class HarnessRow:
    n: int
    max_size: int
    status: str
    exact_bound: Optional[int]
    ratio: float


def conjecture_harness(
    r: int,
    l: LSpec,
    n_range: Iterable[int],
    include_empty: bool = False,
    time_limit: float = 60.0,
    deterministic: bool = True,
    seed: int = 0,
) -> list[HarnessRow]:
    """Compare exact maxima against ``(r - 1) n`` and the exact upper bound."""
    rows = []
    params = InstanceParams(r, l)
    for n in n_range:
        res = branch_and_bound_max(
            SearchConfig(n, params, include_empty, time_limit, deterministic, seed)
        )
        bound = exact_bound(n, r, l.s).exact_bound if r >= 3 and l.s <= n else None
        rows.append(HarnessRow(n, res.max_size, res.status, bound, res.max_size / ((r - 1) * n)))
    return rows


def harness_csv(rows: Iterable[HarnessRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [row.n, row.max_size, row.status, "" if row.exact_bound is None else row.exact_bound,
             f"{row.ratio:.6g}"]
        )
    return buf.getvalue()
