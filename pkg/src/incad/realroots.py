"""Real root isolation and exact real algebraic numbers.

Univariate integer polynomials are handled as coefficient lists, lowest
degree first.  Roots are isolated with the Descartes rule of signs and
bisection (the Vincent-Collins-Akritas scheme); every root is returned as a
:class:`RealAlgebraic`, either an exact rational or a square-free defining
polynomial with an open rational interval holding exactly one of its roots.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ._flint import from_upoly, to_upoly
from .poly import MultiPoly

Number = Union[int, Fraction]
UPoly = list  # list[int], lowest degree first


# ---------------------------------------------------------------------------
# univariate integer polynomial helpers


def trim(c: Sequence) -> list:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def primitive(c: Sequence[Number], keep_sign: bool = False) -> UPoly:
    """Integer, content-free version of a rational list.

    The leading coefficient is made positive unless ``keep_sign`` is set.
    """
    c = trim(c)
    if not c:
        return []
    den = 1
    for a in c:
        if isinstance(a, Fraction):
            den = den * a.denominator // math.gcd(den, a.denominator)
    ints = [int(a * den) for a in c]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if ints[-1] < 0 and not keep_sign:
        g = -g
    return [a // g for a in ints]


def as_upoly(p: MultiPoly | Sequence[Number], keep_sign: bool = False) -> UPoly:
    """Coefficient list of a univariate polynomial, primitive over Z."""
    if isinstance(p, MultiPoly):
        vs = p.variables()
        if len(vs) > 1:
            raise ValueError(f"{p} is not univariate")
        i = next(iter(vs), 0)
        d = p.degree(i)
        c: list[Number] = [0] * (d + 1)
        for e, a in p.terms.items():
            c[e[i]] = a
        return primitive(c, keep_sign)
    return primitive(p, keep_sign)


def horner(c: Sequence[Number], x: Number) -> Number:
    acc: Number = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def sign_at_rational(c: Sequence[int], x: Fraction | int) -> int:
    """Exact sign of an integer polynomial at a rational, in integer arithmetic."""
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    if not c:
        return 0
    # b^n * p(a/b) = sum c_i a^i b^(n-i)
    v = c[-1]
    bp = b
    for i in range(len(c) - 2, -1, -1):
        v = v * a + c[i] * bp
        bp *= b
    return (v > 0) - (v < 0)


def derivative(c: Sequence[int]) -> UPoly:
    return [i * c[i] for i in range(1, len(c))]


def upoly_gcd(a: Sequence[int], b: Sequence[int]) -> UPoly:
    """Primitive gcd with positive leading coefficient."""
    a, b = trim(a), trim(b)
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    if len(a) == 1 or len(b) == 1:
        return [1]
    return primitive(from_upoly(to_upoly(a).gcd(to_upoly(b))))


def upoly_exquo(a: Sequence[int], b: Sequence[int]) -> UPoly:
    """Exact quotient over Q, returned primitive."""
    a = [Fraction(x) for x in trim(a)]
    b = trim(b)
    if len(b) == 1:
        return primitive(a)
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        t = a[k] / b[-1]
        q[k - db] = t
        if t:
            for j in range(db + 1):
                a[k - db + j] -= t * b[j]
    if any(a[:db]):
        raise ArithmeticError("inexact univariate division")
    return primitive(q)


def square_free(c: Sequence[int]) -> UPoly:
    c = primitive(c)
    if len(c) <= 2:
        return c
    g = upoly_gcd(c, derivative(c))
    return c if len(g) == 1 else upoly_exquo(c, g)


def taylor_shift1(c: Sequence[int]) -> UPoly:
    """Coefficients of ``p(x + 1)``."""
    c = list(c)
    n = len(c)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            c[k] += c[k + 1]
    return c


def variations(c: Iterable[int]) -> int:
    count = 0
    last = 0
    for a in c:
        if a:
            if last and (a > 0) != (last > 0):
                count += 1
            last = a
    return count


def descartes_01(c: Sequence[int]) -> int:
    """Descartes bound for the number of roots in the open interval (0, 1)."""
    return variations(taylor_shift1(list(reversed(c))))


def descartes_interval(c: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Descartes bound for roots of ``c`` in the open interval ``(lo, hi)``."""
    q = [Fraction(a) for a in c]
    # q(x) <- q(lo + (hi - lo) x)
    n = len(q)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            q[k] += lo * q[k + 1]
    w = hi - lo
    scale = Fraction(1)
    for k in range(n):
        q[k] *= scale
        scale *= w
    return descartes_01(primitive(q))


def root_bound_exponent(c: Sequence[int]) -> int:
    """A ``k`` with every root of ``c`` strictly below ``2^k`` in absolute value.

    Power-of-two form of the bound ``2 max |a_(n-i) / a_n|^(1/i)``, computed
    from bit lengths only.
    """
    n = len(c) - 1
    lead = abs(c[-1]).bit_length()
    k = 0
    for i in range(1, n + 1):
        a = c[n - i]
        if a:
            # |a / a_n| < 2^(bits(a) - bits(a_n) + 1)
            e = abs(a).bit_length() - lead + 1
            k = max(k, -(-e // i))
    return k + 1


def _isolate_positive(c: UPoly) -> list[tuple[Fraction, Fraction] | Fraction]:
    """Isolate the roots in (0, +inf) of a square-free integer polynomial."""
    n = len(c) - 1
    if n <= 0:
        return []
    big = 2 ** root_bound_exponent(c)
    # q(t) = p(B t)
    q = [a * big ** i for i, a in enumerate(c)]
    out: list[tuple[Fraction, Fraction] | Fraction] = []
    stack = [(primitive(q), Fraction(0), Fraction(big))]
    while stack:
        q, a, b = stack.pop()
        if q is None:  # exact root found at a midpoint
            out.append(a)
            continue
        v = descartes_01(q)
        if v == 0:
            continue
        if v == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        d = len(q) - 1
        left = [x * 2 ** (d - i) for i, x in enumerate(q)]
        right = taylor_shift1(left)
        stack.append((primitive(right[1:] if right[0] == 0 else right), m, b))
        if right[0] == 0:
            stack.append((None, m, m))
            left = _deflate_one(left)
        stack.append((primitive(left), a, m))
    return out


def _deflate_one(c: UPoly) -> UPoly:
    """``c / (t - 1)`` for a polynomial vanishing at 1."""
    out = [0] * (len(c) - 1)
    acc = 0
    for i in range(len(c) - 1, 0, -1):
        acc += c[i]
        out[i - 1] = acc
    return out


def isolate_intervals(c: Sequence[int]) -> list[tuple[Fraction, Fraction] | Fraction]:
    """Sorted isolating data for a square-free integer polynomial.

    Entries are exact rational roots or open intervals ``(lo, hi)`` with
    rational endpoints that are not roots.
    """
    full = c = trim(c)
    out: list[tuple[Fraction, Fraction] | Fraction] = []
    zero = False
    while c and c[0] == 0:
        c = c[1:]
        zero = True
    neg = [a if i % 2 == 0 else -a for i, a in enumerate(c)]
    for item in reversed(_isolate_positive(neg)):
        out.append(-item if isinstance(item, Fraction) else (-item[1], -item[0]))
    if zero:
        out.append(Fraction(0))
    out.extend(_isolate_positive(c))
    return [item if isinstance(item, Fraction) else _clear_endpoints(full, *item) for item in out]


def _clear_endpoints(c: UPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction] | Fraction:
    """Shrink an isolating interval until neither end is a root of ``c``.

    Bisection can leave a neighbouring exact root on an endpoint.  Inside
    the interval ``c`` has one simple root ``r``, so its sign left of ``r``
    is the sign of ``c`` (or of ``c'`` when ``c`` vanishes) at ``lo``.
    """
    s_lo = sign_at_rational(c, lo)
    if s_lo != 0 and sign_at_rational(c, hi) != 0:
        return lo, hi
    left = s_lo or sign_at_rational(derivative(c), lo)
    while sign_at_rational(c, lo) == 0 or sign_at_rational(c, hi) == 0:
        m = (lo + hi) / 2
        s = sign_at_rational(c, m)
        if s == 0:
            return m
        if s == left:
            lo = m
        else:
            hi = m
    return lo, hi


# ---------------------------------------------------------------------------
# exact real algebraic numbers

# above this many bits in the leading coefficient, rational roots are only
# recognised when a bisection midpoint hits them exactly
RATIONAL_CHECK_BITS = 64


class RealAlgebraic:
    """An exact real algebraic number.

    Rational values carry ``exact``; irrational (or not yet recognised
    rational) values carry a square-free primitive integer polynomial
    ``poly`` (lowest degree first) and an open interval ``(lo, hi)`` in which
    ``poly`` has exactly one root.  The interval is tightened in place as a
    cache when comparisons need it; the represented number never changes.
    """

    __slots__ = ("poly", "lo", "hi", "exact", "_slo")

    def __init__(self, poly: Sequence[int], lo: Number, hi: Number, *, _check: bool = True):
        self.poly = tuple(poly)
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self.exact: Fraction | None = None
        if self.lo >= self.hi:
            raise ValueError("isolating interval must satisfy lo < hi")
        self._slo = sign_at_rational(self.poly, self.lo)
        shi = sign_at_rational(self.poly, self.hi)
        if _check and (self._slo == 0 or shi == 0 or self._slo == shi):
            raise ValueError("interval does not isolate a sign-changing root")

    @classmethod
    def rational(cls, value: Number) -> RealAlgebraic:
        value = Fraction(value)
        r = object.__new__(cls)
        r.poly = (-value.numerator, value.denominator)
        r.lo = r.hi = value
        r.exact = value
        r._slo = 0
        return r

    @classmethod
    def coerce(cls, value) -> RealAlgebraic:
        if isinstance(value, RealAlgebraic):
            return value
        return cls.rational(value)

    # -- properties ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.exact is not None

    @property
    def defining(self) -> tuple[int, ...]:
        return self.poly

    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    # -- refinement ----------------------------------------------------

    def _bisect(self) -> None:
        if self.exact is not None:
            return
        m = (self.lo + self.hi) / 2
        s = sign_at_rational(self.poly, m)
        if s == 0:
            self._become_rational(m)
        elif s == self._slo:
            self.lo = m
        else:
            self.hi = m

    def _split_at(self, x: Fraction) -> int:
        """Locate the number relative to ``x``; returns -1, 0 or 1."""
        if self.exact is not None:
            return (self.exact > x) - (self.exact < x)
        if x <= self.lo:
            return 1
        if x >= self.hi:
            return -1
        s = sign_at_rational(self.poly, x)
        if s == 0:
            self._become_rational(x)
            return 0
        if s == self._slo:
            self.lo = x
            return 1
        self.hi = x
        return -1

    def _become_rational(self, x: Fraction) -> None:
        self.exact = x
        self.lo = self.hi = x
        self.poly = (-x.numerator, x.denominator)
        self._slo = 0

    def tighten(self, width: Number) -> None:
        """Shrink the cached interval below ``width`` (in place, value unchanged)."""
        width = Fraction(width)
        while self.exact is None and self.hi - self.lo >= width:
            self._bisect()

    def refine(self, width: Number) -> RealAlgebraic:
        """A new value equal to ``self`` whose interval is narrower than ``width``."""
        if width <= 0:
            raise ValueError("width must be positive")
        out = self.copy()
        out.tighten(width)
        return out

    def copy(self) -> RealAlgebraic:
        if self.exact is not None:
            return RealAlgebraic.rational(self.exact)
        r = object.__new__(RealAlgebraic)
        r.poly, r.lo, r.hi, r.exact, r._slo = self.poly, self.lo, self.hi, None, self._slo
        return r

    def detect_rational(self) -> bool:
        """Decide exactly whether the number is rational, normalising if so."""
        if self.exact is not None:
            return True
        lc = abs(self.poly[-1])
        if len(self.poly) == 2:
            self._become_rational(Fraction(-self.poly[0], self.poly[1]))
            return True
        # a rational root N/D has D | lc, so it is a multiple of 1/lc
        self.tighten(Fraction(1, lc))
        if self.exact is not None:
            return True
        # the interval is now narrower than 1/lc, so holds at most one candidate
        x = Fraction(math.floor(self.lo * lc) + 1, lc)
        if self.lo < x < self.hi:
            return self._split_at(x) == 0
        return False

    # -- comparison ----------------------------------------------------

    def compare(self, other) -> int:
        """-1, 0 or 1 as ``self`` is less than, equal to or greater than ``other``."""
        other = RealAlgebraic.coerce(other)
        if self is other:
            return 0
        if self.exact is not None and other.exact is not None:
            return (self.exact > other.exact) - (self.exact < other.exact)
        if self.exact is not None:
            return -other._split_at(self.exact)
        if other.exact is not None:
            return self._split_at(other.exact)
        if self.hi <= other.lo:
            return -1
        if other.hi <= self.lo:
            return 1
        if self.poly == other.poly:
            # same square-free polynomial, overlapping isolating intervals
            return 0
        g = upoly_gcd(self.poly, other.poly)
        if len(g) > 1:
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            slo, shi = sign_at_rational(g, lo), sign_at_rational(g, hi)
            if slo * shi < 0:
                return 0
        while True:
            if self.hi - self.lo >= other.hi - other.lo:
                self._bisect()
            else:
                other._bisect()
            if self.exact is not None or other.exact is not None:
                return self.compare(other)
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (RealAlgebraic, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def floor(self) -> int:
        if self.exact is not None:
            return math.floor(self.exact)
        while True:
            fl = math.floor(self.lo)
            if fl + 1 >= self.hi:
                return fl
            # an integer strictly inside (lo, hi), near the middle
            k = max(math.floor((self.lo + self.hi) / 2), fl + 1)
            if self._split_at(Fraction(k)) == 0:
                return k

    def ceil(self) -> int:
        f = self.floor()
        return f if self.exact is not None and self.exact == f else f + 1

    def __hash__(self) -> int:
        return hash(("real-algebraic", self.floor()))

    def __neg__(self) -> RealAlgebraic:
        if self.exact is not None:
            return RealAlgebraic.rational(-self.exact)
        flipped = [a if i % 2 == 0 else -a for i, a in enumerate(self.poly)]
        return RealAlgebraic(primitive(flipped), -self.hi, -self.lo, _check=False)

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        self.tighten(Fraction(1, 2 ** 60) * max(1, abs(self.lo)))
        return float((self.lo + self.hi) / 2)

    def approx(self, digits: int = 4) -> str:
        """Decimal approximation correct to ``digits`` places (rounded)."""
        if self.exact is not None:
            x = self.exact
            if x.denominator == 1:
                return str(x.numerator)
            q = round(x * 10 ** digits)
            return _fmt_decimal(q, digits) if Fraction(q, 10 ** digits) != x else _trim_dec(_fmt_decimal(q, digits))
        self.tighten(Fraction(1, 10 ** (digits + 2)))
        q = round((self.lo + self.hi) / 2 * 10 ** digits)
        return _fmt_decimal(q, digits)

    def __str__(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return f"root({_poly_str(self.poly)}, {self.lo}, {self.hi})"

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"RealAlgebraic.rational({self.exact})"
        return f"RealAlgebraic({list(self.poly)}, {self.lo}, {self.hi})"

    def to_json(self):
        if self.exact is not None:
            return {"rational": str(self.exact)}
        return {"poly": [str(a) for a in self.poly], "lo": str(self.lo), "hi": str(self.hi)}

    @classmethod
    def from_json(cls, data) -> RealAlgebraic:
        if "rational" in data:
            return cls.rational(Fraction(data["rational"]))
        return cls([int(a) for a in data["poly"]], Fraction(data["lo"]), Fraction(data["hi"]))


def _fmt_decimal(q: int, digits: int) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    if digits == 0:
        return f"{sign}{q}"
    s = str(q).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _trim_dec(s: str) -> str:
    return s.rstrip("0").rstrip(".") if "." in s else s


def _poly_str(c: Sequence[int], var: str = "x") -> str:
    parts = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(a)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not parts:
            parts.append(("-" if a < 0 else "") + body)
        else:
            parts.append(("- " if a < 0 else "+ ") + body)
    return " ".join(parts) or "0"


# ---------------------------------------------------------------------------
# public operations


def isolate_real_roots(p: MultiPoly | Sequence[Number]) -> list[RealAlgebraic]:
    """Sorted distinct real roots of a nonzero univariate polynomial."""
    c = as_upoly(p)
    if not c:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if len(c) == 1:
        return []
    c = square_free(c)
    out = []
    check = abs(c[-1]).bit_length() <= RATIONAL_CHECK_BITS
    for item in isolate_intervals(c):
        if isinstance(item, Fraction):
            out.append(RealAlgebraic.rational(item))
            continue
        r = RealAlgebraic(c, item[0], item[1], _check=False)
        if len(c) == 2 or check:
            r.detect_rational()
        out.append(r)
    return out


def compare(a: RealAlgebraic | Number, b: RealAlgebraic | Number) -> int:
    return RealAlgebraic.coerce(a).compare(b)


def refine(a: RealAlgebraic, width: Number) -> RealAlgebraic:
    return a.refine(width)


def merge_roots(old: Sequence[RealAlgebraic], new: Sequence[RealAlgebraic]) -> tuple[list[RealAlgebraic], list[bool]]:
    """Sorted union of two sorted duplicate-free root lists.

    ``is_new[i]`` tells whether ``merged[i]`` is absent from ``old``.
    """
    merged: list[RealAlgebraic] = []
    flags: list[bool] = []
    i = j = 0
    while i < len(old) and j < len(new):
        c = old[i].compare(new[j])
        if c < 0:
            merged.append(old[i]); flags.append(False); i += 1
        elif c > 0:
            merged.append(new[j]); flags.append(True); j += 1
        else:
            merged.append(old[i]); flags.append(False); i += 1; j += 1
    for r in old[i:]:
        merged.append(r); flags.append(False)
    for r in new[j:]:
        merged.append(r); flags.append(True)
    return merged, flags


def merge_root_lists(lists: Iterable[Sequence[RealAlgebraic]]) -> list[RealAlgebraic]:
    out: list[RealAlgebraic] = []
    for roots in lists:
        if roots:
            out = merge_roots(out, roots)[0] if out else list(roots)
    return out


def simplest_between(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """Simplest rational strictly inside ``(lo, hi)``; ``None`` means unbounded.

    Simplest means smallest denominator, then smallest absolute numerator.
    """
    if lo is not None and hi is not None and lo >= hi:
        raise ValueError("empty interval")
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return Fraction(0)
    if hi is not None and hi <= 0:
        return -simplest_between(None if hi is None else -hi, None if lo is None else -lo)
    # now 0 <= lo < hi (hi possibly unbounded)
    fl = math.floor(lo)
    if hi is None or fl + 1 < hi:
        return Fraction(fl + 1)
    # the interval sits inside [fl, fl + 1]
    frac_lo, frac_hi = lo - fl, hi - fl
    inner = simplest_between(1 / frac_hi, None if frac_lo == 0 else 1 / frac_lo)
    return fl + 1 / inner


def witness_between(a: RealAlgebraic | None, b: RealAlgebraic | None) -> Fraction:
    """Canonical rational strictly between two consecutive roots.

    Bounded intervals get the simplest rational inside them.  Unbounded ones
    get 0 when it lies inside, else the nearest integer beyond the root.
    """
    if a is None and b is None:
        return Fraction(0)
    if a is None:
        return Fraction(0) if b.compare(0) > 0 else Fraction(b.ceil() - 1)
    if b is None:
        return Fraction(0) if a.compare(0) < 0 else Fraction(a.floor() + 1)
    while True:
        lo = a.exact if a.exact is not None else a.lo
        hi = b.exact if b.exact is not None else b.hi
        w = simplest_between(lo, hi)
        if a.compare(w) < 0 and b.compare(w) > 0:
            return w
        a._bisect()
        b._bisect()


def gen_sample_points(roots: Sequence[RealAlgebraic], mode: str = "open") -> list[RealAlgebraic]:
    """Sample points for the cells of the line cut at ``roots``.

    ``open`` gives the ``k + 1`` sector witnesses; ``full`` interleaves them
    with the roots, ``2k + 1`` points in ascending order.
    """
    if mode not in ("open", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    bounds: list[RealAlgebraic | None] = [None, *roots, None]
    out: list[RealAlgebraic] = []
    for i in range(len(roots) + 1):
        out.append(RealAlgebraic.rational(witness_between(bounds[i], bounds[i + 1])))
        if mode == "full" and i < len(roots):
            out.append(roots[i])
    return out


def sign_at(p: MultiPoly | Sequence[Number], a: RealAlgebraic | Number) -> int:
    """Exact sign of a univariate polynomial at a real algebraic number."""
    c = as_upoly(p, keep_sign=True)
    if not c:
        return 0
    return _sign_primitive(c, RealAlgebraic.coerce(a))


def _sign_primitive(c: Sequence[int], a: RealAlgebraic) -> int:
    if a.exact is not None:
        return sign_at_rational(c, a.exact)
    if len(c) == 1:
        return 1 if c[0] > 0 else -1
    g = upoly_gcd(c, a.poly)
    if len(g) > 1 and sign_at_rational(g, a.lo) * sign_at_rational(g, a.hi) < 0:
        return 0
    while descartes_interval(c, a.lo, a.hi) > 0:
        a._bisect()
        if a.exact is not None:
            return sign_at_rational(c, a.exact)
    return sign_at_rational(c, (a.lo + a.hi) / 2)
