"""q-series expression language, identity registry and coefficient-wise verification.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)*
    atom    := INT | 'QP(' SIGN ',' INT ',' INT ')' | 'JACOBI3' | 'THETA_T'
             | 'THETA_BI' | 'STAT(' NAME ')' | 'HALF(' expr ')' | '(' expr ')'

``QP(-,a,b)`` is ``(q^a; q^b)_inf`` and ``QP(+,a,b)`` is ``(-q^a; q^b)_inf``.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

import mpmath

from . import mexstats, series
from .series import TruncatedSeries


class ExpressionError(ValueError):
    """Base class for expression syntax and evaluation problems."""


class ParseError(ExpressionError):
    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class UnknownStatisticError(ParseError):
    pass


class EvaluationError(ExpressionError):
    pass


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class IntConst:
    value: int


@dataclass(frozen=True)
class QProd:
    sign: int
    a: int
    b: int


@dataclass(frozen=True)
class NamedSeries:
    """``JACOBI_CUBE``, ``TRI_THETA``, ``BILATERAL_THETA`` or ``STAT:<name>``."""

    tag: str


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Scale:
    """Multiply by ``factor``; the parser produces 1/2 (``HALF``) and -1 (unary minus)."""

    factor: Fraction
    operand: "Expr"

    def __post_init__(self) -> None:
        f = Fraction(self.factor)
        if f.denominator not in (1, 2):
            raise ValueError(f"scale factor must have denominator 1 or 2, got {f}")
        object.__setattr__(self, "factor", f)


Expr = Union[IntConst, QProd, NamedSeries, Add, Sub, Mul, Div, Pow, Scale]

_NAMED_TOKENS = {"JACOBI3": "JACOBI_CUBE", "THETA_T": "TRI_THETA", "THETA_BI": "BILATERAL_THETA"}
_NAMED_TEXT = {v: k for k, v in _NAMED_TOKENS.items()}


# --- tokenizer and parser --------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(==|[-+*/^(),]))")


@dataclass
class _Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start,
                             ["integer", "name", "one of + - * / ^ ( ) ,"])
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(_Token("int", num, start))
        elif name is not None:
            tokens.append(_Token("name", name, start))
        else:
            tokens.append(_Token("op", op, start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _expect_op(self, op: str) -> _Token:
        if self.tok.kind != "op" or self.tok.text != op:
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.pos, [repr(op)])
        return self._advance()

    def _expect_int(self) -> int:
        if self.tok.kind != "int":
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.pos, ["integer"])
        return int(self._advance().text)

    @staticmethod
    def _describe(t: _Token) -> str:
        return "end of input" if t.kind == "end" else repr(t.text)

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.pos,
                             ["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"])
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self._advance().text
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self._advance()
            return Scale(Fraction(-1), self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        while self.tok.kind == "op" and self.tok.text == "^":
            self._advance()
            pos = self.tok.pos
            k = self._expect_int()
            if k < 1:
                raise ParseError("exponent must be a positive integer", pos, ["positive integer"])
            node = Pow(node, k)
        return node

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            return IntConst(int(self._advance().text))
        if t.kind == "op" and t.text == "(":
            self._advance()
            node = self.expr()
            self._expect_op(")")
            return node
        if t.kind == "name":
            name = t.text
            if name in _NAMED_TOKENS:
                self._advance()
                return NamedSeries(_NAMED_TOKENS[name])
            if name == "QP":
                self._advance()
                self._expect_op("(")
                s = self.tok
                if s.kind != "op" or s.text not in "+-":
                    raise ParseError(f"unexpected {self._describe(s)}", s.pos, ["'+'", "'-'"])
                self._advance()
                self._expect_op(",")
                a_pos = self.tok.pos
                a = self._expect_int()
                self._expect_op(",")
                b_pos = self.tok.pos
                b = self._expect_int()
                self._expect_op(")")
                if a < 1:
                    raise ParseError("QP offset must be >= 1", a_pos, ["positive integer"])
                if b < 1:
                    raise ParseError("QP step must be >= 1", b_pos, ["positive integer"])
                return QProd(1 if s.text == "+" else -1, a, b)
            if name == "STAT":
                self._advance()
                self._expect_op("(")
                s = self.tok
                if s.kind != "name":
                    raise ParseError(f"unexpected {self._describe(s)}", s.pos, ["statistic name"])
                if s.text not in mexstats.STATISTIC_NAMES:
                    raise UnknownStatisticError(f"unknown statistic {s.text!r}", s.pos,
                                                mexstats.STATISTIC_NAMES)
                self._advance()
                self._expect_op(")")
                return NamedSeries(f"STAT:{s.text}")
            if name == "HALF":
                self._advance()
                self._expect_op("(")
                node = self.expr()
                self._expect_op(")")
                return Scale(Fraction(1, 2), node)
        raise ParseError(f"unexpected {self._describe(t)}", t.pos,
                         ["integer", "'('", "'-'", "QP", "JACOBI3", "THETA_T", "THETA_BI",
                          "STAT", "HALF"])


def parse(text: str) -> Expr:
    """Parse an expression; raises :class:`ParseError` with the offending position."""
    return _Parser(text).parse()


# --- printing --------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Scale: 3, Pow: 4}


def to_text(e: Expr) -> str:
    """Render an expression so that ``parse(to_text(e)) == e``."""
    return _render(e, 0)


def _wrap(s: str, prec: int, ctx: int) -> str:
    return f"({s})" if prec < ctx else s


def _render(e: Expr, ctx: int) -> str:
    if isinstance(e, IntConst):
        if e.value < 0:
            return _wrap(f"-{-e.value}", 3, ctx)
        return str(e.value)
    if isinstance(e, QProd):
        return f"QP({'+' if e.sign > 0 else '-'},{e.a},{e.b})"
    if isinstance(e, NamedSeries):
        if e.tag.startswith("STAT:"):
            return f"STAT({e.tag[5:]})"
        return _NAMED_TEXT[e.tag]
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(_render(e.left, 1) + op + _render(e.right, 2), 1, ctx)
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        return _wrap(_render(e.left, 2) + op + _render(e.right, 3), 2, ctx)
    if isinstance(e, Pow):
        return _wrap(f"{_render(e.base, 5)}^{e.exponent}", 4, ctx)
    if isinstance(e, Scale):
        if e.factor == Fraction(1, 2):
            return f"HALF({_render(e.operand, 0)})"
        if e.factor == -1:
            return _wrap("-" + _render(e.operand, 3), 3, ctx)
        raise ValueError(f"scale factor {e.factor} has no textual form")
    raise TypeError(f"not an expression node: {e!r}")


# --- evaluation ------------------------------------------------------------

def evaluate(expr: Expr, order: int) -> TruncatedSeries:
    """Evaluate an expression exactly to the given truncation order."""
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    if isinstance(expr, IntConst):
        return series.constant(expr.value, order)
    if isinstance(expr, QProd):
        return series.q_pochhammer(expr.sign, expr.a, expr.b, order)
    if isinstance(expr, NamedSeries):
        tag = expr.tag
        if tag == "JACOBI_CUBE":
            return series.jacobi_cube_series(order)
        if tag == "TRI_THETA":
            return series.triangular_theta(order)
        if tag == "BILATERAL_THETA":
            return series.bilateral_theta(order)
        if tag.startswith("STAT:"):
            return mexstats.statistic_series(tag[5:], order)
        raise EvaluationError(f"unknown named series {tag!r}")
    if isinstance(expr, Add):
        return series.add(evaluate(expr.left, order), evaluate(expr.right, order))
    if isinstance(expr, Sub):
        return series.sub(evaluate(expr.left, order), evaluate(expr.right, order))
    if isinstance(expr, Mul):
        return series.mul(evaluate(expr.left, order), evaluate(expr.right, order))
    if isinstance(expr, Div):
        den = evaluate(expr.right, order)
        try:
            inv = series.invert(den)
        except series.NonUnitError as exc:
            raise EvaluationError(f"cannot divide by {to_text(expr.right)}: {exc}") from None
        return series.mul(evaluate(expr.left, order), inv)
    if isinstance(expr, Pow):
        return series.power(evaluate(expr.base, order), expr.exponent)
    if isinstance(expr, Scale):
        inner = evaluate(expr.operand, order)
        num, den = expr.factor.numerator, expr.factor.denominator
        out = []
        for i, c in enumerate(inner.coeffs):
            c *= num
            if c % den:
                raise EvaluationError(
                    f"coefficient {c} of q^{i} is not divisible by {den} in {to_text(expr)}"
                )
            out.append(c // den)
        return TruncatedSeries(order, tuple(out))
    raise TypeError(f"not an expression node: {expr!r}")


# --- registry --------------------------------------------------------------

DEFAULT_ORDER = 60
STRESS_ORDER = 200


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    lhs: Expr
    rhs: Expr
    description: str = ""
    default_order: int = DEFAULT_ORDER

    def to_line(self) -> str:
        return f"{self.id}: {to_text(self.lhs)} == {to_text(self.rhs)}"


_REGISTRY_SOURCE = [
    ("ANDREWS_NEWMAN", "STAT(sigma_mex) == QP(+,1,1)^2",
     "sum of mex over partitions of n has generating function (-q;q)^2"),
    ("SIGMA_O_GFN", "STAT(sigma_o) == HALF(QP(+,1,1)^2 + QP(-,1,1)^2)",
     "odd-mex sum generating function"),
    ("SIGMA_E_GFN", "STAT(sigma_e) == HALF(QP(+,1,1)^2 - QP(-,1,1)^2)",
     "even-mex sum generating function; sigma_e(0) = 0 by the empty-partition convention"),
    ("SIGMA_O_EQ_D2E", "STAT(sigma_o) == STAT(d2_even)",
     "odd-mex sum equals two-colored distinct partitions with an even number of parts"),
    ("SIGMA_E_EQ_D2O", "STAT(sigma_e) == STAT(d2_odd)",
     "even-mex sum equals two-colored distinct partitions with an odd number of parts"),
    ("SIGMA_BAR_GFN", "STAT(sigma_bar) == QP(-,1,1)^2",
     "signed mex sum generating function (q;q)^2"),
    ("JACOBI_CUBE_ID", "JACOBI3 == QP(-,1,1)^3", "Jacobi: (q;q)^3 as a triangular-exponent sum"),
    ("TRI_THETA_ID", "THETA_T == QP(-,2,2)/QP(-,1,2)",
     "Ramanujan's theta: triangular-number sum as (q^2;q^2)/(q;q^2)"),
    ("EULER_ODD", "QP(+,1,1)*QP(-,1,2) == 1", "Euler: (-q;q) = 1/(q;q^2)"),
    ("JTP_SPECIAL", "THETA_BI == QP(-,1,4)*QP(-,3,4)*QP(-,4,4)",
     "Jacobi triple product specialised to sum (-1)^j q^(j(2j+1))"),
    ("O1_O3_GFN", "STAT(o1_minus_o3) == QP(+,2,2)",
     "o1(n) - o3(n) has generating function (-q^2;q^2)"),
]


def parse_identity_line(line: str, description: str = "") -> IdentityEntry:
    """Parse ``ID: LHS == RHS``."""
    head, sep, body = line.partition(":")
    if not sep or not head.strip():
        raise ParseError("identity line needs 'ID: LHS == RHS'", 0, ["':'"])
    ident = head.strip()
    offset = len(head) + 1
    lhs_text, eq, rhs_text = body.partition("==")
    if not eq:
        raise ParseError("identity line needs '=='", offset + len(body), ["'=='"])
    try:
        lhs = parse(lhs_text)
    except ParseError as exc:
        raise type(exc)(str(exc).split(" at position")[0], offset + exc.position, exc.expected) from None
    try:
        rhs = parse(rhs_text)
    except ParseError as exc:
        pos = offset + len(lhs_text) + 2 + exc.position
        raise type(exc)(str(exc).split(" at position")[0], pos, exc.expected) from None
    return IdentityEntry(ident, lhs, rhs, description)


def load_identities(text: str) -> list[IdentityEntry]:
    """Parse an identity file: one ``ID: LHS == RHS`` per line, ``#`` comments allowed."""
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            entry = parse_identity_line(line)
        except ParseError as exc:
            raise type(exc)(f"line {lineno}: {str(exc).split(' at position')[0]}",
                            exc.position, exc.expected) from None
        if entry.id in seen:
            raise ValueError(f"line {lineno}: duplicate identity id {entry.id!r}")
        seen.add(entry.id)
        entries.append(entry)
    return entries


def load_identity_file(path: str | Path) -> list[IdentityEntry]:
    return load_identities(Path(path).read_text(encoding="utf-8"))


_registry_cache: list[IdentityEntry] = []


def registry() -> list[IdentityEntry]:
    """The built-in identities, in a fixed order."""
    if not _registry_cache:
        _registry_cache.extend(
            parse_identity_line(f"{ident}: {text}", desc) for ident, text, desc in _REGISTRY_SOURCE
        )
    return list(_registry_cache)


def export_registry() -> str:
    """The built-in registry in identity-file format."""
    lines = []
    for e in registry():
        lines.append(f"# {e.description}")
        lines.append(e.to_line())
    return "\n".join(lines) + "\n"


def get_entry(ident: str) -> IdentityEntry:
    for e in registry():
        if e.id == ident:
            return e
    raise KeyError(f"unknown identity {ident!r}")


# --- verification ----------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    exponent: int
    lhs: str
    rhs: str


@dataclass(frozen=True)
class VerificationReport:
    id: str
    order: int
    status: str  # "pass" or "fail"
    mismatch: Mismatch | None = None
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        mm = None
        if self.mismatch is not None:
            mm = {"exponent": self.mismatch.exponent, "lhs": self.mismatch.lhs,
                  "rhs": self.mismatch.rhs}
        return {"id": self.id, "order": self.order, "status": self.status, "mismatch": mm,
                "elapsed_ms": round(self.elapsed_ms, 3)}


def verify_entry(entry: IdentityEntry, order: int) -> VerificationReport:
    start = time.perf_counter()
    lhs = evaluate(entry.lhs, order)
    rhs = evaluate(entry.rhs, order)
    equal, at = series.equal_to_order(lhs, rhs)
    elapsed = (time.perf_counter() - start) * 1000
    if equal:
        return VerificationReport(entry.id, order, "pass", None, elapsed)
    mm = Mismatch(at, str(lhs[at]), str(rhs[at]))
    return VerificationReport(entry.id, order, "fail", mm, elapsed)


def verify(ident: str | IdentityEntry, order: int = DEFAULT_ORDER) -> VerificationReport:
    """Check one identity coefficient-wise through ``q^order``."""
    entry = ident if isinstance(ident, IdentityEntry) else get_entry(ident)
    return verify_entry(entry, order)


def verify_all(order: int = DEFAULT_ORDER,
               entries: Iterable[IdentityEntry] | None = None) -> list[VerificationReport]:
    entries = registry() if entries is None else list(entries)
    # warm the shared partition tables once before the per-entry evaluations
    mexstats.partition_series(order)
    mexstats.p(order)
    return [verify_entry(e, order) for e in entries]


# --- asymptotics -----------------------------------------------------------

ASYMPTOTIC_DPS = 60


def asymptotic_main_term(n: int, dps: int = ASYMPTOTIC_DPS) -> mpmath.mpf:
    """``exp(pi sqrt(2n/3)) / (4 (6 n^3)^(1/4))``."""
    with mpmath.workdps(dps):
        n = mpmath.mpf(n)
        return mpmath.exp(mpmath.pi * mpmath.sqrt(2 * n / 3)) / (4 * mpmath.root(6 * n**3, 4))


def asymptotic_ratios(samples: Iterable[int], digits: int = 30) -> list[tuple[int, str]]:
    """``sigma_mex(n) / main_term(n)`` for each sample, as decimal strings."""
    out = []
    for n in samples:
        if n < 1:
            raise ValueError(f"asymptotic samples must be >= 1, got {n}")
        with mpmath.workdps(ASYMPTOTIC_DPS):
            ratio = mpmath.mpf(mexstats.sigma_mex(n)) / asymptotic_main_term(n)
            out.append((n, mpmath.nstr(ratio, digits)))
    return out
