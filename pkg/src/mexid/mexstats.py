"""Minimal-excludant statistics, each available by two independent routes.

*Enumeration* routes walk every partition of ``n`` and are the definitions.
*Formula* routes are finite sums over triangular numbers ``t_m`` of the
partition function ``p``; *series* routes read coefficients off
``q^C(m,2) (1 - q^m) / (q;q)_inf``.

By convention the empty partition has mex 1, so ``sigma_mex(0) = 1``,
``o(0) = 1`` and ``sigma_e_mex(0) = 0``.
"""

from __future__ import annotations

import csv
import io
import threading
from collections import Counter
from dataclasses import astuple, dataclass, fields
from functools import lru_cache
from typing import Iterable, Sequence

from . import series
from .partitions import (
    Partition,
    d2_counts,
    d2_parity_counts,
    iter_distinct_parts,
    iter_partition_parts,
    p,
    q_distinct,
    triangular,
)

#: Largest ``n`` the enumeration routes accept by default (p(45) = 89134).
ENUM_LIMIT = 45
#: Largest moment order accepted by the public API.
MAX_K = 10


@dataclass(frozen=True)
class ZPolynomial:
    """Polynomial in ``z`` with integer coefficients; ``coeffs[i]`` multiplies ``z^i``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> ZPolynomial:
        """Sum of ``coeff * z^power`` over ``(power, coeff)`` pairs."""
        acc: dict[int, int] = {}
        for e, v in terms:
            acc[e] = acc.get(e, 0) + v
        if not acc:
            return cls()
        c = [0] * (max(acc) + 1)
        for e, v in acc.items():
            c[e] = v
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: ZPolynomial) -> ZPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPolynomial(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: ZPolynomial) -> ZPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPolynomial(tuple(self[i] - other[i] for i in range(n)))

    def __mul__(self, other: ZPolynomial) -> ZPolynomial:
        if not self.coeffs or not other.coeffs:
            return ZPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ZPolynomial(tuple(out))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            body = mono if mono and abs(c) == 1 else f"{abs(c)}{mono}"
            out.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


# --- definition level ------------------------------------------------------

def mex(pi: Partition | Sequence[int]) -> int:
    """Smallest positive integer that is not a part."""
    parts = pi.parts if isinstance(pi, Partition) else tuple(pi)
    m = 1
    # scan from the smallest part upward
    for x in sorted(parts):
        if x == m:
            m += 1
        elif x > m:
            break
    return m


def _mex_of_sorted_desc(parts: tuple[int, ...]) -> int:
    m = 1
    for x in reversed(parts):
        if x == m:
            m += 1
        elif x > m:
            break
    return m


@lru_cache(maxsize=None)
def _mex_histogram(n: int) -> tuple[tuple[int, int], ...]:
    counts: Counter[int] = Counter()
    for parts in iter_partition_parts(n):
        counts[_mex_of_sorted_desc(parts)] += 1
    return tuple(sorted(counts.items()))


def mex_histogram(n: int) -> dict[int, int]:
    """``{m: #partitions of n with mex m}`` by full enumeration (cached per ``n``)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return dict(_mex_histogram(n))


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"moment order k must be in 1..{MAX_K}, got {k}")


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")


def mex_power_sum(n: int, k: int = 1, *, parity: str | None = None, signed: bool = False) -> int:
    """Enumeration route for every moment statistic.

    ``parity`` restricts to ``"odd"`` or ``"even"`` mex; ``signed`` weights each
    partition by ``(-1)^(mex-1)``.
    """
    total = 0
    for m, count in mex_histogram(n).items():
        if parity == "odd" and m % 2 == 0 or parity == "even" and m % 2 == 1:
            continue
        w = count * m**k
        total += -w if signed and m % 2 == 0 else w
    return total


def p_mex_enum(m: int, n: int) -> int:
    """Number of partitions of ``n`` with mex ``m``, by enumeration."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return mex_histogram(n).get(m, 0)


def oe_counts(n: int) -> tuple[int, int]:
    """``(o(n), e(n))``: partitions of ``n`` with odd / even mex, by enumeration."""
    o = e = 0
    for m, count in mex_histogram(n).items():
        if m & 1:
            o += count
        else:
            e += count
    return o, e


def o1_o3_counts(n: int) -> tuple[int, int]:
    """``(o1(n), o3(n))``: partitions with mex congruent to 1 / 3 mod 4, by enumeration."""
    o1 = o3 = 0
    for m, count in mex_histogram(n).items():
        if m % 4 == 1:
            o1 += count
        elif m % 4 == 3:
            o3 += count
    return o1, o3


# --- series route ----------------------------------------------------------

_pgf_lock = threading.Lock()
_pgf: list[series.TruncatedSeries] = []


def partition_series(order: int) -> series.TruncatedSeries:
    """``1/(q;q)_inf`` to at least ``order``, by series inversion (cached, grows by doubling)."""
    with _pgf_lock:
        if not _pgf or _pgf[0].order < order:
            size = max(order, 2 * _pgf[0].order if _pgf else 64)
            _pgf[:] = [series.invert(series.euler_product(size))]
        return _pgf[0]


def p_mex_series(m: int, n: int) -> int:
    """Coefficient of ``q^n`` in ``q^C(m,2) (1 - q^m) / (q;q)_inf``."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    _check_n(n)
    base = n - m * (m - 1) // 2
    if base < 0:
        return 0
    pc = partition_series(n).coeffs
    return pc[base] - (pc[base - m] if base >= m else 0)


def _max_mex(n: int) -> int:
    # largest m with t_(m-1) <= n
    m = 1
    while triangular(m) <= n:
        m += 1
    return m


def mex_polynomial(n: int, route: str = "auto") -> ZPolynomial:
    """``sum_m p_mex(m, n) z^m``.

    ``route`` is ``"enum"``, ``"series"`` or ``"auto"`` (enumeration up to
    :data:`ENUM_LIMIT`, series beyond).
    """
    _check_n(n)
    if route == "auto":
        route = "enum" if n <= ENUM_LIMIT else "series"
    if route == "enum":
        return ZPolynomial.from_terms(mex_histogram(n).items())
    if route == "series":
        return ZPolynomial.from_terms((m, p_mex_series(m, n)) for m in range(1, _max_mex(n) + 1))
    raise ValueError(f"unknown route {route!r}")


# --- formula route ---------------------------------------------------------

def _triangular_shifts(n: int):
    """Yield ``(m, p(n - t_m))`` while ``t_m <= n``."""
    m = 0
    while True:
        t = m * (m + 1) // 2
        if t > n:
            return
        yield m, p(n - t)
        m += 1


def master_rhs_polynomial(n: int) -> ZPolynomial:
    """``p(n) + (z - 1) sum_m p(n - t_m) z^m`` expanded."""
    _check_n(n)
    terms = [(0, p(n))]
    for m, pv in _triangular_shifts(n):
        terms.append((m + 1, pv))
        terms.append((m, -pv))
    return ZPolynomial.from_terms(terms)


def moment_rhs_polynomial(n: int, k: int) -> ZPolynomial:
    """``sum_m ((m+1)^k z^(m+1) - m^k z^m) p(n - t_m)``; equals ``sum_m p_mex(m,n) m^k z^m``."""
    _check_n(n)
    _check_k(k)
    terms = []
    for m, pv in _triangular_shifts(n):
        terms.append((m + 1, (m + 1) ** k * pv))
        terms.append((m, -(m**k) * pv))
    return ZPolynomial.from_terms(terms)


def sigma_moment(n: int, k: int) -> int:
    _check_n(n)
    _check_k(k)
    return sum(((m + 1) ** k - m**k) * pv for m, pv in _triangular_shifts(n))


def sigma_bar_moment(n: int, k: int) -> int:
    _check_n(n)
    _check_k(k)
    return sum((-1) ** m * ((m + 1) ** k + m**k) * pv for m, pv in _triangular_shifts(n))


def sigma_o_moment(n: int, k: int) -> int:
    _check_n(n)
    _check_k(k)
    return sum(((m + 1) ** k if m % 2 == 0 else -(m**k)) * pv for m, pv in _triangular_shifts(n))


def sigma_e_moment(n: int, k: int) -> int:
    _check_n(n)
    _check_k(k)
    return sum((-(m**k) if m % 2 == 0 else (m + 1) ** k) * pv for m, pv in _triangular_shifts(n))


def sigma_mex(n: int) -> int:
    """Sum of mex over all partitions of ``n``: ``sum_m p(n - t_m)``."""
    _check_n(n)
    return sum(pv for _, pv in _triangular_shifts(n))


def sigma_bar_mex(n: int) -> int:
    """Signed sum ``sum_pi (-1)^(mex-1) mex``: ``sum_m (-1)^m (2m+1) p(n - t_m)``."""
    _check_n(n)
    return sum((-1) ** m * (2 * m + 1) * pv for m, pv in _triangular_shifts(n))


def sigma_o_mex(n: int) -> int:
    """Sum of odd mex values: ``sum_m (2m+1) (p(n - t_2m) - p(n - t_(2m+1)))``."""
    _check_n(n)
    total = 0
    m = 0
    while triangular(2 * m) <= n:
        total += (2 * m + 1) * (p(n - triangular(2 * m)) - p(n - triangular(2 * m + 1)))
        m += 1
    return total


def sigma_e_mex(n: int) -> int:
    """Sum of even mex values: ``sum_m (2m+2) (p(n - t_(2m+1)) - p(n - t_(2m+2)))``."""
    _check_n(n)
    total = 0
    m = 0
    while triangular(2 * m + 1) <= n:
        total += (2 * m + 2) * (p(n - triangular(2 * m + 1)) - p(n - triangular(2 * m + 2)))
        m += 1
    return total


def oe_diff_formula(n: int) -> int:
    """``o(n) - e(n) = p(n) + 2 sum_{m>=1} (-1)^m p(n - t_m)``."""
    _check_n(n)
    return p(n) + 2 * sum((-1) ** m * pv for m, pv in _triangular_shifts(n) if m >= 1)


def oe_series_counts(n: int) -> tuple[int, int]:
    """``(o(n), e(n))`` from the series route."""
    o = e = 0
    for m in range(1, _max_mex(n) + 1):
        if m & 1:
            o += p_mex_series(m, n)
        else:
            e += p_mex_series(m, n)
    return o, e


def o1_o3_series_counts(n: int) -> tuple[int, int]:
    """``(o1(n), o3(n))`` from the series route."""
    o1 = o3 = 0
    for m in range(1, _max_mex(n) + 1, 2):
        if m % 4 == 1:
            o1 += p_mex_series(m, n)
        else:
            o3 += p_mex_series(m, n)
    return o1, o3


# --- tabulation ------------------------------------------------------------

@dataclass(frozen=True)
class MexStatRow:
    """One row of the statistics table.

    ``o``, ``e``, ``o1`` and ``o3`` are ``None`` when enumeration was skipped.
    """

    n: int
    sigma_mex: int
    sigma_bar: int
    sigma_o: int
    sigma_e: int
    o: int | None = None
    e: int | None = None
    o1: int | None = None
    o3: int | None = None

    def to_dict(self) -> dict:
        return {
            f.name: (str(v) if v is not None and f.name != "n" else v)
            for f, v in zip(fields(self), astuple(self))
        }


ROW_COLUMNS = tuple(f.name for f in fields(MexStatRow))


def mex_stat_row(n: int, *, enumerate_counts: bool = True) -> MexStatRow:
    _check_n(n)
    row = dict(
        n=n,
        sigma_mex=sigma_mex(n),
        sigma_bar=sigma_bar_mex(n),
        sigma_o=sigma_o_mex(n),
        sigma_e=sigma_e_mex(n),
    )
    if enumerate_counts:
        row["o"], row["e"] = oe_counts(n)
        row["o1"], row["o3"] = o1_o3_counts(n)
    return MexStatRow(**row)


def rows_to_csv(rows: Iterable[MexStatRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROW_COLUMNS)
    for r in rows:
        writer.writerow(["" if v is None else v for v in astuple(r)])
    return buf.getvalue()


# --- statistic series ------------------------------------------------------

def _stat_sigma_mex(N):
    return [sigma_mex(n) for n in range(N + 1)]


def _stat_sigma_bar(N):
    return [sigma_bar_mex(n) for n in range(N + 1)]


def _stat_sigma_o(N):
    return [sigma_o_mex(n) for n in range(N + 1)]


def _stat_sigma_e(N):
    return [sigma_e_mex(n) for n in range(N + 1)]


def _stat_d2(N):
    return [e + o for e, o in d2_parity_counts(N)]


def _stat_d2_even(N):
    return [e for e, _ in d2_parity_counts(N)]


def _stat_d2_odd(N):
    return [o for _, o in d2_parity_counts(N)]


def _stat_o_minus_e(N):
    return [oe_diff_formula(n) for n in range(N + 1)]


def _stat_o1_minus_o3(N):
    return [a - b for a, b in (o1_o3_series_counts(n) for n in range(N + 1))]


def _stat_p(N):
    return [p(n) for n in range(N + 1)]


def _stat_q(N):
    return [q_distinct(n) for n in range(N + 1)]


_STATISTICS = {
    "sigma_mex": _stat_sigma_mex,
    "sigma_bar": _stat_sigma_bar,
    "sigma_o": _stat_sigma_o,
    "sigma_e": _stat_sigma_e,
    "d2": _stat_d2,
    "d2_even": _stat_d2_even,
    "d2_odd": _stat_d2_odd,
    "o_minus_e": _stat_o_minus_e,
    "o1_minus_o3": _stat_o1_minus_o3,
    "p": _stat_p,
    "q": _stat_q,
}

#: Names accepted by ``STAT(...)`` in identity expressions.
STATISTIC_NAMES = tuple(_STATISTICS)


@lru_cache(maxsize=64)
def statistic_series(name: str, order: int) -> series.TruncatedSeries:
    """``sum_{n<=order} stat(n) q^n`` for a named statistic, via its non-enumeration route."""
    try:
        fn = _STATISTICS[name]
    except KeyError:
        raise KeyError(f"unknown statistic {name!r}; known: {', '.join(STATISTIC_NAMES)}") from None
    return series.TruncatedSeries(order, tuple(fn(order)))


def statistic_enum_values(name: str, n: int) -> int:
    """Definition-level value of a named statistic at ``n`` (enumeration)."""
    if name == "sigma_mex":
        return mex_power_sum(n)
    if name == "sigma_bar":
        return mex_power_sum(n, signed=True)
    if name == "sigma_o":
        return mex_power_sum(n, parity="odd")
    if name == "sigma_e":
        return mex_power_sum(n, parity="even")
    if name in ("d2", "d2_even", "d2_odd"):
        return d2_counts(n)[("d2", "d2_even", "d2_odd").index(name)]
    if name == "o_minus_e":
        o, e = oe_counts(n)
        return o - e
    if name == "o1_minus_o3":
        o1, o3 = o1_o3_counts(n)
        return o1 - o3
    if name == "p":
        return sum(1 for _ in iter_partition_parts(n))
    if name == "q":
        return sum(1 for _ in iter_distinct_parts(n))
    raise KeyError(f"unknown statistic {name!r}")
