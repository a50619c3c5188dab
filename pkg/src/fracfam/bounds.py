"""Prime and primorial utilities and the upper bounds on family size.

The exact bound is ``t * (p_t - 1) * (r - 1) * D`` where ``p_1 < ... < p_t`` are
the fewest leading primes whose product exceeds ``n`` and ``D`` is either
``sum_{l <= s} C(n, l)`` or, when ``s <= n + 1 - 2 ln n``, ``C(n, s)``.
"""
from __future__ import annotations

import bisect
import math
import threading
from dataclasses import asdict, dataclass
from typing import Optional

_lock = threading.Lock()
_sieve_limit = 1
_primes: list[int] = []


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def primes_up_to(limit: int) -> list[int]:
    """All primes ``<= limit``; the shared cache is extended on demand."""
    global _sieve_limit, _primes
    with _lock:
        if limit > _sieve_limit:
            new_limit = max(limit, 2 * _sieve_limit, 1024)
            _primes = _sieve(new_limit)
            _sieve_limit = new_limit
        primes = _primes
    return primes[: bisect.bisect_right(primes, limit)]


def first_primes(count: int) -> list[int]:
    limit = 16
    while True:
        primes = primes_up_to(limit)
        if len(primes) >= count:
            return primes[:count]
        limit *= 2


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeSelection:
    t: int
    primes: tuple[int, ...]
    product: int

    @property
    def largest(self) -> int:
        return self.primes[-1]


def select_primes(n: int) -> PrimeSelection:
    """Fewest leading primes whose product strictly exceeds ``n``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    chosen: list[int] = []
    product = 1
    limit = 64
    primes = primes_up_to(limit)
    while product <= n:
        if len(chosen) == len(primes):
            limit *= 2
            primes = primes_up_to(limit)
        p = primes[len(chosen)]
        chosen.append(p)
        product *= p
    return PrimeSelection(len(chosen), tuple(chosen), product)


def improved_case(n: int, s: int) -> bool:
    """``s <= n + 1 - 2 ln n`` evaluated in double precision."""
    return s <= n + 1 - 2.0 * math.log(n)


def binomial_sum(n: int, s: int) -> int:
    return sum(math.comb(n, l) for l in range(s + 1))


@dataclass(frozen=True)
class BoundReport:
    n: int
    r: int
    s: int
    prime_selection: PrimeSelection
    exact_bound: int
    exact_improved: Optional[int]
    asymptotic_bound: Optional[float]
    improved_case: bool
    t_estimate: Optional[float] = None
    pt_estimate: Optional[float] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        sel = d.pop("prime_selection")
        d["t"] = sel["t"]
        d["primes"] = list(sel["primes"])
        d["primorial"] = sel["product"]
        d["p_t"] = sel["primes"][-1]
        return d


def _check_params(n: int, r: int, s: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if r < 3:
        raise ValueError(f"the bound requires r >= 3, got r={r}")
    if not 1 <= s <= n:
        raise ValueError(f"s must satisfy 1 <= s <= n, got s={s}, n={n}")


def exact_bound(n: int, r: int, s: int) -> BoundReport:
    _check_params(n, r, s)
    sel = select_primes(n)
    factor = sel.t * (sel.largest - 1) * (r - 1)
    improved = improved_case(n, s)
    asym = t_est = pt_est = None
    if n >= 16:
        asym = asymptotic_bound(n, r, s)
        t_est, pt_est = pnt_estimates(n)
    return BoundReport(
        n=n,
        r=r,
        s=s,
        prime_selection=sel,
        exact_bound=factor * binomial_sum(n, s),
        exact_improved=factor * math.comb(n, s) if improved else None,
        asymptotic_bound=asym,
        improved_case=improved,
        t_estimate=t_est,
        pt_estimate=pt_est,
    )


def asymptotic_bound(n: int, r: int, s: int) -> float:
    """``2 (ln^2 n / ln ln n) (r - 1) D`` with ``D`` chosen as in :func:`exact_bound`."""
    if n < 16:
        raise ValueError(f"asymptotic form needs n >= 16 (ln ln n <= 0 below), got n={n}")
    _check_params(n, r, s)
    ln = math.log(n)
    dim = math.comb(n, s) if improved_case(n, s) else binomial_sum(n, s)
    return 2.0 * (ln * ln / math.log(ln)) * (r - 1) * float(dim)


def pnt_estimates(n: int) -> tuple[float, float]:
    """Return ``(ln n / ln ln n, 2 t ln t)`` with ``t`` from :func:`select_primes`."""
    if n < 16:
        raise ValueError(f"estimates need n >= 16, got n={n}")
    ln = math.log(n)
    t = select_primes(n).t
    return ln / math.log(ln), 2.0 * t * math.log(t)
