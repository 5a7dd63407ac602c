"""Exact partition counting.

The counters all live over plain Python integers (counts overflow 64
bits already near n = 416 for the unrestricted partition function, so
machine words are never trusted).  Names follow the standard notation
of the Alder conjecture literature:

    q_count(a, d, n)            q_d^(a)(n):  parts >= a, successive gaps >= d
    big_q(a, d, n)              Q_d^(a)(n):  parts == +-a (mod d+3)
    big_q_minus(a, d, n)        Q_d^(a,-):   additionally excluding d+3-a
    big_q_minus_minus(a, d, n)  Q_d^(a,--):  excluding both a and d+3-a
    delta* variants             q - Q differences
    rho(A, n)                   partitions of n with parts in the set A

``q_count`` uses the classical staircase bijection: a gap->=d partition
into exactly k parts with minimum >= a corresponds, after removing the
staircase a+(k-j)d from the j-th largest part, to a partition of
n - a*k - d*k*(k-1)/2 into at most k parts.  ``rho`` is a bounded
coin-change pass over the set's elements.  Both are backed by dense
tables per (set, horizon) that are built once, grown geometrically on
demand, and read-only afterwards; ``q_brute``/``rho_brute`` are the
independent enumeration oracles used to pin them down in tests.

Two auxiliary counters bound q_d^(1) from below for d >= 63:
``g_script(d, n)`` counts pairs of a distinct-parts partition over the
class d+2^(r-1) (mod 2d) and an unrestricted partition over T(r-1, d);
``l_script(d, n)`` is rho over T(r_of(d), d).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from . import cache as _cache
from .partset import ResidueClassSet, pm_set, r_of, t_set

#: refuse brute-force enumeration beyond this unless the caller raises it
DEFAULT_BRUTE_LIMIT = 60

_cache_dir: str | None = None
_tables: dict[str, "CountTable"] = {}
_build_lock = threading.Lock()


def set_cache_dir(path: str | None) -> None:
    """Point the on-disk table cache at a directory (None disables it)."""
    global _cache_dir
    _cache_dir = str(path) if path is not None else None


@dataclass(frozen=True)
class CountTable:
    """Dense table of counts for 0..horizon, immutable after construction."""

    key: str
    horizon: int
    values: tuple[int, ...]

    def __post_init__(self):
        assert self.values[0] == 1 and len(self.values) == self.horizon + 1


def _build_part_table(A: ResidueClassSet, horizon: int) -> list[int]:
    dp = [0] * (horizon + 1)
    dp[0] = 1
    for v in A.elements_upto(horizon):
        for m in range(v, horizon + 1):
            dp[m] += dp[m - v]
    return dp


def _build_gap_table(a: int, d: int, horizon: int) -> list[int]:
    out = [0] * (horizon + 1)
    out[0] = 1
    atmost = [0] * (horizon + 1)  # partitions into at most k parts, grown per k
    atmost[0] = 1
    k = 0
    while True:
        k += 1
        offset = a * k + d * k * (k - 1) // 2
        if offset > horizon:
            break
        for m in range(k, horizon + 1):
            atmost[m] += atmost[m - k]
        for m in range(horizon - offset + 1):
            out[offset + m] += atmost[m]
    return out


def _build_g_table(d: int, horizon: int) -> list[int]:
    r = r_of(d)
    if r < 2:
        raise ValueError(f"g_script: need r_of(d) >= 2, got d={d}")
    dp = _build_part_table(t_set(r - 1, d), horizon)
    v = d + 2 ** (r - 1)  # distinct parts from this class, step 2d
    while v <= horizon:
        for m in range(horizon, v - 1, -1):
            dp[m] += dp[m - v]
        v += 2 * d
    return dp


_BUILDERS = {
    "parts": lambda spec, h: _build_part_table(spec, h),
    "gap": lambda spec, h: _build_gap_table(spec[0], spec[1], h),
    "g": lambda spec, h: _build_g_table(spec, h),
}


def _table(kind: str, spec, key: str, n: int) -> CountTable:
    tab = _tables.get(key)
    if tab is not None and tab.horizon >= n:
        return tab
    with _build_lock:
        tab = _tables.get(key)
        if tab is not None and tab.horizon >= n:
            return tab
        horizon = max(n, 64, 2 * tab.horizon if tab is not None else 0)
        values = _cache.load(_cache_dir, key, horizon) if _cache_dir else None
        if values is None:
            values = _BUILDERS[kind](spec, horizon)
            if _cache_dir:
                _cache.store(_cache_dir, key, values)
        tab = CountTable(key, len(values) - 1, tuple(values))
        _tables[key] = tab
        return tab


def _part_table(A: ResidueClassSet, n: int) -> CountTable:
    return _table("parts", A, "rho." + A.key(), n)


def _gap_table(a: int, d: int, n: int) -> CountTable:
    if a < 1 or d < 1:
        raise ValueError(f"need a >= 1 and d >= 1, got a={a}, d={d}")
    return _table("gap", (a, d), f"q.a{a}.d{d}", n)


def warm_up(part_sets: list[ResidueClassSet], gap_families: list[tuple[int, int]],
            horizon: int) -> None:
    """Build all tables a grid run will read, before any workers fan out."""
    for A in part_sets:
        _part_table(A, horizon)
    for a, d in gap_families:
        _gap_table(a, d, horizon)


def rho(A: ResidueClassSet, n: int) -> int:
    """Number of partitions of n with all parts in A (rho(A, 0) = 1)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _part_table(A, n).values[n]


def rho_brute(A: ResidueClassSet, n: int, limit: int = DEFAULT_BRUTE_LIMIT) -> int:
    """Oracle for rho: plain recursive enumeration of part multisets."""
    if n > limit:
        raise ValueError(f"rho_brute: n={n} beyond oracle limit {limit}")
    elements = A.elements_upto(n)

    def walk(remaining: int, max_idx: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for idx in range(max_idx, -1, -1):
            v = elements[idx]
            if v <= remaining:
                total += walk(remaining - v, idx)
        return total

    return walk(n, len(elements) - 1) if n else 1


def q_count(a: int, d: int, n: int) -> int:
    """q_d^(a)(n): partitions of n into parts >= a with successive gaps >= d."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _gap_table(a, d, n).values[n]


def q_brute(a: int, d: int, n: int, limit: int = DEFAULT_BRUTE_LIMIT) -> int:
    """Oracle for q_count: enumerate gap->=d part lists smallest-part first."""
    if n > limit:
        raise ValueError(f"q_brute: n={n} beyond oracle limit {limit}")

    def walk(remaining: int, lo: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for p in range(lo, remaining + 1):
            total += walk(remaining - p, p + d)
        return total

    return walk(n, a)


def _pm_exclusions(a: int, d: int, minus: int) -> list[int]:
    if minus == 0:
        return []
    if minus == 1:
        return [d + 3 - a]
    return sorted({a, d + 3 - a})


def _big_q_set(a: int, d: int, minus: int) -> ResidueClassSet:
    if a < 1 or a >= d + 3:
        raise ValueError(f"need 1 <= a < d+3, got a={a}, d={d}")
    return pm_set(a, d + 3, _pm_exclusions(a, d, minus))


def big_q(a: int, d: int, n: int) -> int:
    """Q_d^(a)(n): partitions of n into parts == +-a (mod d+3)."""
    return rho(_big_q_set(a, d, 0), n)


def big_q_minus(a: int, d: int, n: int) -> int:
    """Q_d^(a,-)(n): as big_q but the part d+3-a is excluded."""
    return rho(_big_q_set(a, d, 1), n)


def big_q_minus_minus(a: int, d: int, n: int) -> int:
    """Q_d^(a,--)(n): as big_q but both parts a and d+3-a are excluded."""
    return rho(_big_q_set(a, d, 2), n)


def delta(a: int, d: int, n: int) -> int:
    return q_count(a, d, n) - big_q(a, d, n)


def delta_minus(a: int, d: int, n: int) -> int:
    return q_count(a, d, n) - big_q_minus(a, d, n)


def delta_minus_minus(a: int, d: int, n: int) -> int:
    return q_count(a, d, n) - big_q_minus_minus(a, d, n)


def g_script(d: int, n: int) -> int:
    """Pairs (D, U) of total weight n: D distinct parts == d+2^(r-1) (mod 2d),
    U an unrestricted multiset over T(r-1, d), where r = r_of(d).

    For d >= 63 and n >= 5d this sits between q_d^(1)(n) above and
    rho(T(5,d); n) below, which is the chain the tests pin down.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _table("g", d, f"g.d{d}", n).values[n]


def l_script(d: int, n: int) -> int:
    """rho over T(r_of(d), d); for d = 2^r - 1 this is the classical
    lower-bound counter for q_d^(1)."""
    return rho(t_set(r_of(d), d), n)


def q_lower_bound(d: int, n: int) -> int:
    """max(1, floor((n-d)/2) + 1), a floor for q_d^(1)(n): the partition n
    itself plus the two-part splits (n-k) + k with k <= (n-d)/2."""
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    return max(1, (n - d) // 2 + 1)


def largest_part_counts(A: ResidueClassSet, n: int, i_max: int) -> list[int]:
    """Count partitions of n over A by largest part, for parts x_1..x_{i_max}.

    Entry j (0-based) counts partitions whose largest part is the (j+1)-th
    smallest element of A; rho(A, n) equals the total plus [n == 0].
    """
    elements = A.elements_upto(n)[:i_max]
    dp = [0] * (n + 1)
    dp[0] = 1
    out = []
    for v in elements:
        for m in range(v, n + 1):
            dp[m] += dp[m - v]
        out.append(dp[n - v])
    out.extend([0] * (i_max - len(out)))
    return out
