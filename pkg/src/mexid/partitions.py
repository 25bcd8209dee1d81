"""Partition enumeration and counting.

Counting functions keep memo tables that grow to the largest ``n`` requested.
Growth is guarded by a lock, so concurrent callers are safe; warm the tables
once (e.g. ``p(N)``) before fanning out to avoid lock contention.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "+".join(map(str, self.parts)) if self.parts else "()"


@dataclass(frozen=True)
class ColoredDistinctPartition:
    """A pair of distinct-part partitions, one per color."""

    color1_parts: tuple[int, ...] = ()
    color2_parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for parts in (self.color1_parts, self.color2_parts):
            if any(x < 1 for x in parts):
                raise ValueError(f"parts must be positive: {parts}")
            if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
                raise ValueError(f"parts within a color must strictly decrease: {parts}")

    @property
    def n(self) -> int:
        return sum(self.color1_parts) + sum(self.color2_parts)

    @property
    def num_parts(self) -> int:
        return len(self.color1_parts) + len(self.color2_parts)

    def __str__(self) -> str:
        merged = sorted(
            [(x, 2) for x in self.color2_parts] + [(x, 1) for x in self.color1_parts],
            reverse=True,
        )
        return "+".join(f"{x}_{c}" for x, c in merged) if merged else "()"


def iter_partition_parts(n: int) -> Iterator[tuple[int, ...]]:
    """Yield the parts of every partition of ``n`` in reverse-lexicographic order.

    This is the ZS1 algorithm (Zoghbi and Stojmenovic); it yields plain tuples
    and is the fast path behind :func:`enumerate_partitions`.
    """
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    x = [1] * (n + 1)
    x[1] = n
    m = 1  # number of parts
    h = 1  # index of the last part > 1
    yield (n,)
    while x[1] != 1:
        if x[h] == 2:
            m += 1
            x[h] = 1
            h -= 1
        else:
            r = x[h] - 1
            t = m - h + 1
            x[h] = r
            while t >= r:
                h += 1
                x[h] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h] = t
        yield tuple(x[1 : m + 1])


def enumerate_partitions(n: int) -> Iterator[Partition]:
    for parts in iter_partition_parts(n):
        yield Partition(parts)


def iter_distinct_parts(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into distinct parts, largest part first, reverse-lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    # the parts 1..largest must be able to reach n
    for largest in range(min(n, max_part), 0, -1):
        if largest * (largest + 1) // 2 < n:
            break
        for rest in iter_distinct_parts(n - largest, largest - 1):
            yield (largest,) + rest


def enumerate_colored_distinct(n: int) -> Iterator[ColoredDistinctPartition]:
    """Every pair of distinct-part partitions (color 1, color 2) with total ``n``."""
    if n < 0:
        return
    tables = [list(iter_distinct_parts(j)) for j in range(n + 1)]
    for j in range(n + 1):
        for c1 in tables[j]:
            for c2 in tables[n - j]:
                yield ColoredDistinctPartition(c1, c2)


def d2_counts(n: int) -> tuple[int, int, int]:
    """``(D2, D2e, D2o)`` by enumerating two-colored distinct-part partitions.

    ``D2e``/``D2o`` count those with an even/odd total number of parts.
    """
    even = odd = 0
    if n < 0:
        return 0, 0, 0
    # only the parity of the part count matters, so count per color first
    by_parity = [[0, 0] for _ in range(n + 1)]
    for j in range(n + 1):
        for parts in iter_distinct_parts(j):
            by_parity[j][len(parts) & 1] += 1
    for j in range(n + 1):
        a, b = by_parity[j], by_parity[n - j]
        even += a[0] * b[0] + a[1] * b[1]
        odd += a[0] * b[1] + a[1] * b[0]
    return even + odd, even, odd


def distinct_parity_table(order: int) -> list[tuple[int, int]]:
    """``[(even, odd)]`` counts of distinct-part partitions of 0..order by part-count parity.

    Dynamic programming over the allowed parts; no enumeration.
    """
    even = [0] * (order + 1)
    odd = [0] * (order + 1)
    even[0] = 1
    for part in range(1, order + 1):
        for s in range(order, part - 1, -1):
            even[s], odd[s] = even[s] + odd[s - part], odd[s] + even[s - part]
    return list(zip(even, odd))


def d2_parity_counts(order: int) -> list[tuple[int, int]]:
    """``[(D2e(n), D2o(n)) for n in 0..order]`` by convolving per-color parity counts."""
    table = distinct_parity_table(order)
    out = []
    for n in range(order + 1):
        e = o = 0
        for j in range(n + 1):
            (a0, a1), (b0, b1) = table[j], table[n - j]
            e += a0 * b0 + a1 * b1
            o += a0 * b1 + a1 * b0
        out.append((e, o))
    return out


def triangular(m: int) -> int:
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    return m * (m + 1) // 2


# --- memoized counting -----------------------------------------------------

_lock = threading.Lock()
_p_cache: list[int] = [1]
_q_cache: list[int] = [1]
_odd_divisor_sums: list[int] = [0]


def _extend_p(n: int) -> None:
    with _lock:
        cache = _p_cache
        for m in range(len(cache), n + 1):
            total = 0
            k = 1
            while True:
                g = k * (3 * k - 1) // 2
                if g > m:
                    break
                term = cache[m - g]
                g2 = g + k
                if g2 <= m:
                    term += cache[m - g2]
                total += term if k & 1 else -term
                k += 1
            cache.append(total)


def p(n: int) -> int:
    """Number of partitions of ``n`` (Euler's pentagonal recurrence); 0 for ``n < 0``."""
    if n < 0:
        return 0
    if n >= len(_p_cache):
        _extend_p(n)
    return _p_cache[n]


def _extend_q(n: int) -> None:
    # partitions into odd parts: m*Q(m) = sum_{k=1}^m sigma_odd(k) Q(m-k)
    with _lock:
        sig = _odd_divisor_sums
        for k in range(len(sig), n + 1):
            s = 0
            d = 1
            while d * d <= k:
                if k % d == 0:
                    e = k // d
                    if d & 1:
                        s += d
                    if e != d and e & 1:
                        s += e
                d += 1
            sig.append(s)
        cache = _q_cache
        for m in range(len(cache), n + 1):
            total = 0
            for k in range(1, m + 1):
                total += sig[k] * cache[m - k]
            cache.append(total // m)


def q_distinct(n: int) -> int:
    """Number of partitions of ``n`` into distinct parts; 0 for ``n < 0``.

    Computed via Euler's odd-parts equivalence and the divisor-sum recurrence,
    independently of any product expansion.
    """
    if n < 0:
        return 0
    if n >= len(_q_cache):
        _extend_q(n)
    return _q_cache[n]


def reset_cache() -> None:
    """Drop the memo tables for :func:`p` and :func:`q_distinct`."""
    with _lock:
        del _p_cache[1:]
        del _q_cache[1:]
        del _odd_divisor_sums[1:]
