"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` is bound to a :class:`VarOrder`; exponent vectors are
indexed by position in that order, position 0 being the lowest variable
``x1`` (the last one projected onto).  Coefficients are ``int`` wherever
possible and :class:`fractions.Fraction` otherwise, so the integer-heavy
projection pipeline never pays for rational arithmetic it does not need.

Greatest common divisors and irreducible factorization are delegated to
FLINT (see :func:`gcd` and :func:`factor`); everything else here is
self-contained.
"""
from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

Rational = Union[int, Fraction]
Exponent = tuple[int, ...]


class PolyError(ValueError):
    """Base class for polynomial construction errors."""


class PolySyntaxError(PolyError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UndeclaredVariableError(PolyError):
    def __init__(self, name: str, position: int | None = None):
        self.name = name
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"undeclared variable {name!r}{where}")


class NotDivisibleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class VarOrder:
    """Variable ordering ``x1 < x2 < ... < xn``; ``names[0]`` is lowest."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable order needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")

    @classmethod
    def parse(cls, spec: str) -> VarOrder:
        """Parse ``"x1 < x2 < x3"`` (or a comma separated list, lowest first)."""
        parts = re.split(r"\s*[<,]\s*", spec.strip())
        return cls(tuple(p for p in parts if p))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def index(self, var: str | int) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.names):
                raise UndeclaredVariableError(f"#{var}")
            return var
        try:
            return self.names.index(var)
        except ValueError:
            raise UndeclaredVariableError(var) from None

    def __str__(self) -> str:
        return " < ".join(self.names)


def _normalize(c: Rational) -> Rational:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _grlex_key(e: Exponent) -> tuple:
    # total degree first, then the highest variable is most significant
    return (sum(e), e[::-1])


class MultiPoly:
    """Immutable sparse polynomial: ``{exponent vector: nonzero coefficient}``."""

    __slots__ = ("order", "_terms", "_hash")

    def __init__(self, order: VarOrder, terms: Mapping[Exponent, Rational] | None = None):
        n = len(order)
        clean: dict[Exponent, Rational] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            if c:
                clean[e] = _normalize(c if isinstance(c, (int, Fraction)) else Fraction(c))
        self.order = order
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, order: VarOrder, terms: dict[Exponent, Rational]) -> MultiPoly:
        # trusted constructor: no zero coefficients, normalized values
        p = object.__new__(cls)
        p.order = order
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, order: VarOrder, c: Rational) -> MultiPoly:
        return cls._raw(order, {(0,) * len(order): _normalize(c)} if c else {})

    @classmethod
    def var(cls, order: VarOrder, name: str | int, power: int = 1) -> MultiPoly:
        i = order.index(name)
        e = [0] * len(order)
        e[i] = power
        return cls._raw(order, {tuple(e): 1})

    # -- basic accessors -------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Rational]:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.order)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def degree(self, var: str | int) -> int:
        """Degree in ``var``; the zero polynomial has degree 0 by convention."""
        i = self.order.index(var)
        return max((e[i] for e in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def main_index(self) -> int:
        """Index of the highest variable present, or -1 for constants."""
        best = -1
        for e in self._terms:
            for i in range(len(e) - 1, best, -1):
                if e[i]:
                    best = i
                    break
        return best

    def variables(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    def leading_term(self) -> tuple[Exponent, Rational]:
        """Leading term under graded-lex order."""
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def coefficients(self, var: str | int) -> dict[int, MultiPoly]:
        """Split into ``{k: coefficient of var^k}``; coefficients omit ``var``."""
        i = self.order.index(var)
        parts: dict[int, dict[Exponent, Rational]] = {}
        for e, c in self._terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly._raw(self.order, t) for k, t in parts.items()}

    def coefficient(self, var: str | int, k: int) -> MultiPoly:
        """Coefficient of ``var^k`` (possibly zero)."""
        return self.coefficients(var).get(k, MultiPoly._raw(self.order, {}))

    def leading_coefficient(self, var: str | int) -> MultiPoly:
        cs = self.coefficients(var)
        return cs[max(cs)] if cs else self

    def trailing_coefficient(self, var: str | int) -> MultiPoly:
        """Lowest-degree nonzero coefficient in ``var``."""
        cs = self.coefficients(var)
        return cs[min(cs)] if cs else self

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if other.order is not self.order and other.order != self.order:
            raise ValueError("polynomials belong to different variable orders")

    def _lift(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.order, other)
        return None

    def __add__(self, other) -> MultiPoly:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _normalize(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.order, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.order, {e: -c for e, c in self._terms.items()})

    def __pos__(self) -> MultiPoly:
        return self

    def __sub__(self, other) -> MultiPoly:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, Rational] = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw(self.order, {e: _normalize(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Rational) -> MultiPoly:
        if not c:
            return MultiPoly._raw(self.order, {})
        return MultiPoly._raw(self.order, {e: _normalize(v * c) for e, v in self._terms.items()})

    def __truediv__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, MultiPoly):
            return exact_div(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.constant(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.order == other.order and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order.names, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation ----------------------------------------

    def diff(self, var: str | int) -> MultiPoly:
        i = self.order.index(var)
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = _normalize(c * k)
        return MultiPoly._raw(self.order, out)

    def subs(self, var: str | int, value: Rational) -> MultiPoly:
        """Substitute a rational for ``var`` (the variable stays in the order)."""
        i = self.order.index(var)
        value = _normalize(value)
        out: dict[Exponent, Rational] = {}
        powers: dict[int, Rational] = {}
        for e, c in self._terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            f = e[:i] + (0,) + e[i + 1:]
            out[f] = out.get(f, 0) + c * powers[k]
        return MultiPoly._raw(self.order, {e: _normalize(c) for e, c in out.items() if c})

    def evaluate(self, point: Mapping[str | int, Rational] | Iterable[Rational]) -> Rational:
        """Evaluate at a rational point (mapping or positional, lowest variable first)."""
        if isinstance(point, Mapping):
            values = [None] * self.nvars
            for k, v in point.items():
                values[self.order.index(k)] = v
        else:
            values = list(point)
        total: Rational = 0
        for e, c in self._terms.items():
            t = c
            for k, x in zip(e, values):
                if k:
                    if x is None:
                        raise ValueError("point does not assign every variable")
                    t = t * x ** k
            total += t
        return _normalize(total)

    # -- normal forms ----------------------------------------------------

    def integer_content(self) -> tuple[Fraction, MultiPoly]:
        """Return ``(c, q)`` with ``self = c*q`` and ``q`` primitive over Z."""
        if not self._terms:
            return Fraction(0), self
        den = 1
        for c in self._terms.values():
            if type(c) is Fraction:
                den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [int(c * den) for c in self._terms.values()]
        g = 0
        for v in nums:
            g = math.gcd(g, v)
            if g == 1:
                break
        factor = Fraction(g, den)
        if g == 1 and den == 1:
            return factor, self
        return factor, MultiPoly._raw(self.order, {e: int(c * den) // g for e, c in self._terms.items()})

    def canonical(self) -> MultiPoly:
        """Primitive over Z with positive leading coefficient (graded lex)."""
        if not self._terms:
            return self
        _, q = self.integer_content()
        if q.leading_term()[1] < 0:
            q = -q
        return q

    def is_canonical(self) -> bool:
        return bool(self._terms) and self.canonical() == self

    def sort_key(self) -> tuple:
        m = self.main_index()
        return (m, self.degree(m) if m >= 0 else 0, len(self._terms), str(self))

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.order.names
        pieces = []
        for e in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i in range(len(e) - 1, -1, -1)
                for k in (e[i],)
                if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, order={list(self.order.names)})"


# ---------------------------------------------------------------------------
# Parsing

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, order: VarOrder):
        self.text = text
        self.order = order
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str) -> PolySyntaxError:
        kind, val, pos = self.peek()
        what = "end of input" if kind == "end" else repr(val)
        return PolySyntaxError(f"{message}, found {what}", pos, self.text)

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error("expected an operator")
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise PolySyntaxError("division by a non-constant", pos, self.text)
                if q.is_zero():
                    raise PolySyntaxError("division by zero", pos, self.text)
                p = p.scale(Fraction(1) / Fraction(q.constant_value()))
        return p

    def unary(self) -> MultiPoly:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, _ = self.peek()
            if kind != "num":
                raise self.error("expected a non-negative integer exponent")
            self.take()
            return base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return MultiPoly.constant(self.order, int(val))
        if kind == "var":
            self.take()
            if val not in self.order.names:
                raise UndeclaredVariableError(val, pos)
            return MultiPoly.var(self.order, val)
        if (kind, val) == ("op", "("):
            self.take()
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return p
        raise self.error("expected a number, variable or '('")


def parse_poly(text: str, order: VarOrder) -> MultiPoly:
    """Parse ``text`` such as ``"x1^2 + x2^2 - 1"`` into a polynomial over ``order``.

    Only declared variables, integer literals, ``+ - * / ^`` and parentheses
    are accepted; division is allowed by constants only and multiplication
    must be explicit.
    """
    return _Parser(text, order).parse()


# ---------------------------------------------------------------------------
# Module-level operations


def degree(p: MultiPoly, v: str | int) -> int:
    return p.degree(v)


def boundary_coefficients(p: MultiPoly, v: str | int) -> tuple[MultiPoly, MultiPoly]:
    """``(leading, constant)`` coefficients of ``p`` in ``v``.

    The second entry is the coefficient of ``v^0`` and may be zero; use
    :meth:`MultiPoly.trailing_coefficient` for the lowest nonzero one.
    """
    return p.leading_coefficient(v), p.coefficient(v, 0)


def exact_div(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Quotient ``p / d``; raises :class:`NotDivisibleError` unless exact."""
    q, r = _divmod(p, d)
    if r:
        raise NotDivisibleError(f"{d} does not divide {p}")
    return q


def divides(p: MultiPoly, d: MultiPoly) -> bool:
    """True iff ``d`` divides ``p`` exactly over the rationals."""
    if d.is_zero():
        raise ZeroDivisionError("divisibility by the zero polynomial")
    try:
        _divmod(p, d, stop_on_remainder=True)
    except NotDivisibleError:
        return False
    return True


def _lex_key(e: Exponent) -> Exponent:
    return e[::-1]


def _divmod(p: MultiPoly, d: MultiPoly, stop_on_remainder: bool = False) -> tuple[MultiPoly, MultiPoly]:
    # division by a single polynomial under lex order (highest variable first)
    p._check(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    dlead = max(d._terms, key=_lex_key)
    dcoef = d._terms[dlead]
    dtail = [(e, c) for e, c in d._terms.items() if e != dlead]
    rem = dict(p._terms)
    heap = [tuple(-k for k in _lex_key(e)) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, Rational] = {}
    leftover: dict[Exponent, Rational] = {}
    while heap:
        key = heapq.heappop(heap)
        e = tuple(-k for k in key)[::-1]
        c = rem.pop(e, 0)
        if not c:
            continue
        while heap and heap[0] == key:
            heapq.heappop(heap)
        shift = tuple(a - b for a, b in zip(e, dlead))
        if any(k < 0 for k in shift):
            if stop_on_remainder:
                raise NotDivisibleError
            leftover[e] = c
            continue
        if type(c) is int and type(dcoef) is int and c % dcoef == 0:
            t = c // dcoef
        else:
            t = _normalize(Fraction(c) / dcoef)
        quot[shift] = t
        for f, fc in dtail:
            g = tuple(a + b for a, b in zip(f, shift))
            v = rem.get(g, 0) - t * fc
            if v:
                if g not in rem:
                    heapq.heappush(heap, tuple(-k for k in _lex_key(g)))
                rem[g] = _normalize(v)
            else:
                rem.pop(g, None)
    return MultiPoly._raw(p.order, quot), MultiPoly._raw(p.order, leftover)


# -- gcd and factorization (FLINT backed) ----------------------------------


def _to_flint(p: MultiPoly):
    from ._flint import to_mpoly

    _, q = p.integer_content()
    return to_mpoly(q._terms, len(p.order))


def _from_flint(order: VarOrder, f) -> MultiPoly:
    from ._flint import from_mpoly

    return MultiPoly._raw(order, from_mpoly(f, len(order)))


def gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, returned in canonical form (0 if both are 0)."""
    a._check(b)
    if a.is_zero():
        return b.canonical()
    if b.is_zero():
        return a.canonical()
    if a.is_constant() or b.is_constant():
        return MultiPoly.constant(a.order, 1)
    return _from_flint(a.order, _to_flint(a).gcd(_to_flint(b))).canonical()


def _factor_integral(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    from ._flint import from_upoly, to_upoly

    _, q = p.integer_content()
    vs = q.variables()
    if len(vs) == 1:
        (v,) = vs
        coeffs = [0] * (q.degree(v) + 1)
        for e, c in q._terms.items():
            coeffs[e[v]] = int(c)
        _, factors = to_upoly(coeffs).factor()
        out = []
        for f, k in factors:
            terms = {}
            for j, c in enumerate(from_upoly(f)):
                if c:
                    e = [0] * len(p.order)
                    e[v] = j
                    terms[tuple(e)] = c
            out.append((MultiPoly._raw(p.order, terms), int(k)))
        return out
    try:
        _, factors = _to_flint(q).factor()
    except OverflowError:
        # python-flint 0.9 cannot sort factor lists with very large
        # coefficients; SymPy handles those rare cases
        return _factor_sympy(q)
    return [(_from_flint(p.order, f), int(k)) for f, k in factors]


def _factor_sympy(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    from sympy import Poly, symbols

    gens = symbols(" ".join(f"_v{i}" for i in range(len(p.order))), seq=True)
    _, factors = Poly.from_dict(dict(p._terms), *gens, domain="ZZ").factor_list()
    return [(MultiPoly._raw(p.order, {tuple(e): int(c) for e, c in f.as_dict().items()}), int(k)) for f, k in factors]


def factor(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Irreducible factors over Z in canonical form with multiplicities."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return []
    out = [(f.canonical(), k) for f, k in _factor_integral(p)]
    return sorted(((f, k) for f, k in out if not f.is_constant()), key=lambda fk: fk[0].sort_key())


def factor_set(polys: Iterable[MultiPoly]) -> frozenset[MultiPoly]:
    """Canonical irreducible factors of all members, constants dropped."""
    out: set[MultiPoly] = set()
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        if p.total_degree() == 1:
            out.add(p.canonical())
            continue
        out.update(f for f, _ in factor(p))
    return frozenset(out)


def content_primitive(p: MultiPoly, v: str | int) -> tuple[MultiPoly, MultiPoly]:
    """Split ``p`` into content (gcd of its ``v``-coefficients) and primitive part.

    The primitive part is integral, primitive and has a positive leading
    coefficient; the content absorbs every constant factor so that
    ``content * primitive == p`` exactly.
    """
    if p.is_zero():
        raise ValueError("content of the zero polynomial is undefined")
    coeffs = sorted(p.coefficients(v).values(), key=lambda c: len(c._terms))
    g = coeffs[0].canonical()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = gcd(g, c)
    prim = exact_div(p, g) if not g.is_constant() else p
    prim = prim.canonical()
    content = exact_div(p, prim)
    return content, prim


def square_free_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of ``p`` (canonical)."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial is undefined")
    if p.is_constant():
        return MultiPoly.constant(p.order, 1)
    m = p.main_index()
    content, prim = content_primitive(p, m)
    g = gcd(prim, prim.diff(m))
    part = exact_div(prim, g).canonical() if not g.is_constant() else prim
    if not content.is_constant():
        part = (part * square_free_part(content)).canonical()
    return part


def square_free_factor_set(s: Iterable[MultiPoly], v: str | int | None = None) -> frozenset[MultiPoly]:
    """Square-free parts of the members, canonical and constant free.

    ``v`` names the variable the surrounding algorithm is working in; the
    square-free part removes repeated factors in every variable, so it only
    serves as documentation of intent here.
    """
    out = set()
    for p in s:
        if p.is_zero():
            raise ValueError("square-free basis of a set containing zero")
        if not p.is_constant():
            out.add(square_free_part(p))
    return frozenset(out)


def remove_constant_multiples(s: Iterable[MultiPoly]) -> frozenset[MultiPoly]:
    """Drop constants (zero included) and identify members up to scaling."""
    return frozenset(p.canonical() for p in s if not p.is_constant())


def sorted_polys(s: Iterable[MultiPoly]) -> list[MultiPoly]:
    return sorted(s, key=MultiPoly.sort_key)
