"""Truncated formal power series in q with exact integer coefficients.

A :class:`TruncatedSeries` of order ``N`` stores the coefficients of
``q^0 .. q^N``.  Every operation is exact and refuses to mix orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class OrderMismatchError(ValueError):
    """Raised when two series of different truncation order are combined."""


class NonUnitError(ValueError):
    """Raised when inverting a series whose constant term is not +1 or -1."""


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"order must be non-negative, got {self.order}")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise ValueError(
                f"series of order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], order: int | None = None) -> TruncatedSeries:
        """Build a series from leading coefficients, zero-padding or truncating to ``order``."""
        if order is None:
            order = len(coeffs) - 1
        padded = list(coeffs[: order + 1]) + [0] * max(0, order + 1 - len(coeffs))
        return cls(order, tuple(padded))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, other)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return sub(self, other)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return mul(self, other)

    def __pow__(self, k: int) -> TruncatedSeries:
        return power(self, k)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("- " if c < 0 else "+ ") + body)
        if not terms:
            return f"0 + O(q^{self.order + 1})"
        text = " ".join(terms)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        return f"{text} + O(q^{self.order + 1})"

    def to_json(self) -> dict:
        """JSON-ready mapping; coefficients are decimal strings to stay exact."""
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> TruncatedSeries:
        return cls(int(data["order"]), tuple(int(c) for c in data["coeffs"]))


def zero(order: int) -> TruncatedSeries:
    return TruncatedSeries(order, (0,) * (order + 1))


def one(order: int) -> TruncatedSeries:
    return constant(1, order)


def constant(c: int, order: int) -> TruncatedSeries:
    return TruncatedSeries(order, (c,) + (0,) * order)


def _check_orders(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.order != b.order:
        raise OrderMismatchError(f"cannot combine series of order {a.order} and {b.order}")
    return a.order


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_orders(a, b)
    return TruncatedSeries(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_orders(a, b)
    return TruncatedSeries(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def scale(c: int, a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(a.order, tuple(c * x for x in a.coeffs))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    n = _check_orders(a, b)
    out = [0] * (n + 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n - i + 1):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(n, tuple(out))


def power(a: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        raise ValueError("negative powers: use invert() explicitly")
    result = one(a.order)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with constant term +1 or -1."""
    a0 = a.coeffs[0]
    if a0 not in (1, -1):
        raise NonUnitError(f"constant term {a0} is not a unit")
    n = a.order
    support = [(k, c) for k, c in enumerate(a.coeffs) if k > 0 and c]
    b = [0] * (n + 1)
    b[0] = a0
    for m in range(1, n + 1):
        s = 0
        for k, c in support:
            if k > m:
                break
            s += c * b[m - k]
        # a0 is its own inverse
        b[m] = -a0 * s
    return TruncatedSeries(n, tuple(b))


def shift(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """Multiply by ``q^k`` (k >= 0), dropping terms past the order."""
    if k < 0:
        raise ValueError("shift exponent must be non-negative")
    n = a.order
    return TruncatedSeries(n, ((0,) * min(k, n + 1) + a.coeffs)[: n + 1])


def q_pochhammer(sign: int, a: int, b: int, order: int) -> TruncatedSeries:
    """Truncation of ``prod_{j>=0} (1 + sign * q^(a + j*b))``.

    ``sign=-1`` gives ``(q^a; q^b)_inf`` and ``sign=+1`` gives ``(-q^a; q^b)_inf``.
    Factors whose exponent exceeds ``order`` are skipped.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if a < 1 or b < 1:
        raise ValueError(f"need a >= 1 and b >= 1, got a={a}, b={b}")
    c = [0] * (order + 1)
    c[0] = 1
    for e in range(a, order + 1, b):
        for i in range(order, e - 1, -1):
            c[i] += sign * c[i - e]
    return TruncatedSeries(order, tuple(c))


def euler_product(order: int) -> TruncatedSeries:
    """``(q; q)_inf``."""
    return q_pochhammer(-1, 1, 1, order)


def neg_q_product(order: int) -> TruncatedSeries:
    """``(-q; q)_inf``, the distinct-parts generating function."""
    return q_pochhammer(1, 1, 1, order)


def _from_terms(terms: Iterable[tuple[int, int]], order: int) -> TruncatedSeries:
    c = [0] * (order + 1)
    for e, v in terms:
        c[e] += v
    return TruncatedSeries(order, tuple(c))


def jacobi_cube_series(order: int) -> TruncatedSeries:
    """``sum_{m>=0} (-1)^m (2m+1) q^(m(m+1)/2)``."""

    def terms():
        m = 0
        while m * (m + 1) // 2 <= order:
            yield m * (m + 1) // 2, (-1) ** m * (2 * m + 1)
            m += 1

    return _from_terms(terms(), order)


def triangular_theta(order: int) -> TruncatedSeries:
    """``sum_{m>=0} q^(m(m+1)/2)``."""

    def terms():
        m = 0
        while m * (m + 1) // 2 <= order:
            yield m * (m + 1) // 2, 1
            m += 1

    return _from_terms(terms(), order)


def bilateral_theta(order: int) -> TruncatedSeries:
    """``sum_{j in Z} (-1)^j q^(j(2j+1))``."""

    def terms():
        yield 0, 1
        j = 1
        while True:
            pos, neg = j * (2 * j + 1), j * (2 * j - 1)
            if pos > order and neg > order:
                return
            sign = (-1) ** j
            if pos <= order:
                yield pos, sign
            if neg <= order:
                yield neg, sign
            j += 1

    return _from_terms(terms(), order)


def equal_to_order(a: TruncatedSeries, b: TruncatedSeries) -> tuple[bool, int | None]:
    """Compare coefficient-wise; returns ``(equal, first_mismatch_exponent)``."""
    _check_orders(a, b)
    for i, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return False, i
    return True, None
