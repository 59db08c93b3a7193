"""Polynomials, rational functions and Laurent windows over Z_{p^r}.

Coefficient sequences are tuples of canonical residues in ascending degree
with trailing zeros trimmed.  The module-level ``_p*`` helpers operate on
those raw tuples; :class:`Polynomial` and :class:`RationalFunction` wrap them
with a :class:`~zprconv.ring.RingContext`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContextMismatch, NilpotentDenominator, NotAUnit, ZeroDenominator
from .ring import RingContext, RingElem

Coeffs = tuple


# -- raw coefficient tuples -------------------------------------------------

def _trim(c) -> Coeffs:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(a: Coeffs, b: Coeffs, m: int) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % m
    return _trim(out)


def _psub(a: Coeffs, b: Coeffs, m: int) -> Coeffs:
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % m
    return _trim(out)


def _pscale(a: Coeffs, c: int, m: int) -> Coeffs:
    c %= m
    if not c:
        return ()
    if c == 1:
        return a
    return _trim([x * c % m for x in a])


def _pmul(a: Coeffs, b: Coeffs, m: int) -> Coeffs:
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0], m)
    if len(b) == 1:
        return _pscale(a, b[0], m)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % m for x in out])


def _pshift(a: Coeffs, k: int) -> Coeffs:
    """Multiply by D^k (k may be negative if a has enough low zeros)."""
    if not a or k == 0:
        return a
    if k > 0:
        return (0,) * k + a
    return a[-k:]


def _low(a: Coeffs) -> int:
    """Order in D of a nonzero polynomial."""
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("zero polynomial has no order")


def _mod_p(a: Coeffs, p: int) -> Coeffs:
    return _trim([x % p for x in a])


def _conjugator(den: Coeffs, ctx: RingContext) -> Coeffs:
    """s with den*s = u^r, u the digit lift of den mod p.

    Requires den mod p != 0.  Since (p*m)^r = 0 the alternating sum
    telescopes: (u + pm) * sum_j (-1)^j u^(r-1-j) (pm)^j = u^r.
    """
    m = ctx.modulus
    u = _mod_p(den, ctx.p)
    pm = _psub(den, u, m)
    if not pm:
        return _upow(u, ctx.r - 1, m)
    s: Coeffs = ()
    upow = [(1,)]
    for _ in range(ctx.r - 1):
        upow.append(_pmul(upow[-1], u, m))
    pmpow: Coeffs = (1,)
    for j in range(ctx.r):
        term = _pmul(upow[ctx.r - 1 - j], pmpow, m)
        s = _padd(s, term, m) if j % 2 == 0 else _psub(s, term, m)
        pmpow = _pmul(pmpow, pm, m)
        if not pmpow:
            break
    return s


def _upow(u: Coeffs, e: int, m: int) -> Coeffs:
    out: Coeffs = (1,)
    for _ in range(e):
        out = _pmul(out, u, m)
    return out


def _divmod_unit_lead(a: Coeffs, b: Coeffs, m: int) -> tuple[Coeffs, Coeffs]:
    """Euclidean division by b whose leading coefficient is a unit."""
    inv = pow(b[-1], -1, m)
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return (), _trim(rem)
    q = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % m
        if not c:
            continue
        f = c * inv % m
        q[i - db] = f
        for j, y in enumerate(b):
            rem[i - db + j] = (rem[i - db + j] - f * y) % m
    return _trim(q), _trim([x % m for x in rem[:db]])


def _exact_div(a: Coeffs, b: Coeffs, ctx: RingContext) -> Coeffs | None:
    """Polynomial q with b*q == a, or None.  b must be nonzero mod p."""
    if not a:
        return ()
    m = ctx.modulus
    if b[-1] % ctx.p:
        bb, aa = b, a
    else:
        s = _conjugator(b, ctx)
        bb, aa = _pmul(b, s, m), _pmul(a, s, m)
    if len(aa) < len(bb):
        return None
    q, rem = _divmod_unit_lead(aa, bb, m)
    return None if rem else q


def _coeff_valuation(a: Coeffs, ctx: RingContext) -> int:
    return min((ctx.valuation(x) for x in a), default=ctx.r)


# -- Polynomial -------------------------------------------------------------

class Polynomial:
    """Element of Z_{p^r}[D]; ``coeffs[i]`` is the coefficient of D^i."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Iterable[int], ctx: RingContext):
        m = ctx.modulus
        self.coeffs = _trim([int(c) % m for c in coeffs])
        self.ctx = ctx

    @classmethod
    def _raw(cls, coeffs: Coeffs, ctx: RingContext) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.ctx = ctx
        return obj

    @classmethod
    def zero(cls, ctx):
        return cls._raw((), ctx)

    @classmethod
    def one(cls, ctx):
        return cls._raw((1,), ctx)

    @classmethod
    def monomial(cls, c: int, k: int, ctx) -> "Polynomial":
        return cls([0] * k + [c], ctx)

    @classmethod
    def coerce(cls, x, ctx: RingContext) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ctx != ctx:
                raise ContextMismatch(f"{x.ctx} vs {ctx}")
            return x
        if isinstance(x, RingElem):
            return cls((x.value,), ctx)
        if isinstance(x, int):
            return cls((x,), ctx)
        return cls(x, ctx)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, RingElem)):
            return Polynomial.coerce(other, self.ctx)
        return NotImplemented

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(_padd(self.coeffs, o.coeffs, self.ctx.modulus), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(_psub(self.coeffs, o.coeffs, self.ctx.modulus), self.ctx)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Polynomial._raw(_psub((), self.coeffs, self.ctx.modulus), self.ctx)

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial._raw(_pscale(self.coeffs, other, self.ctx.modulus), self.ctx)
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(_pmul(self.coeffs, o.coeffs, self.ctx.modulus), self.ctx)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return Polynomial._raw(_upow(self.coeffs, e, self.ctx.modulus), self.ctx)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs and self.ctx == other.ctx
        if isinstance(other, int):
            return self.coeffs == _trim([other % self.ctx.modulus])
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.ctx.p, self.ctx.r))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "D" if i == 1 else f"D^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    def shift(self, k: int) -> "Polynomial":
        return Polynomial._raw(_pshift(self.coeffs, k), self.ctx)

    def order(self) -> int:
        """Exponent of the lowest nonzero term (the D-adic order)."""
        return _low(self.coeffs)

    def valuation(self) -> int:
        """Minimum p-adic valuation over the coefficients (r for zero)."""
        return _coeff_valuation(self.coeffs, self.ctx)

    def mod_p(self) -> tuple[int, ...]:
        """Coefficients reduced mod p, as a trimmed tuple over Z_p."""
        return _mod_p(self.coeffs, self.ctx.p)

    def is_laurent_unit(self) -> bool:
        return bool(self.mod_p())

    def div_p_power(self, a: int) -> "Polynomial":
        """The polynomial g with p^a * g == self, coefficients in [0, p^(r-a))."""
        q = self.ctx.p**a
        if any(c % q for c in self.coeffs):
            raise ValueError(f"not divisible by p^{a}")
        return Polynomial._raw(tuple(c // q for c in self.coeffs), self.ctx)

    def exact_divide(self, other: "Polynomial") -> "Polynomial | None":
        """Polynomial quotient self/other if it exists (other a Laurent unit)."""
        if not other.mod_p():
            raise NotAUnit("divisor vanishes mod p")
        q = _exact_div(self.coeffs, other.coeffs, self.ctx)
        return None if q is None else Polynomial._raw(q, self.ctx)

    def to_list(self) -> list[int]:
        return list(self.coeffs) if self.coeffs else [0]


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.ctx != g.ctx:
        raise ContextMismatch(f"{f.ctx} vs {g.ctx}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def mod_p_project(f: Polynomial) -> Polynomial:
    """Reduce coefficients mod p; the result lives over Z_p (r = 1)."""
    return Polynomial(f.mod_p(), RingContext(f.ctx.p, 1))


# -- rational functions -----------------------------------------------------

def _canonical(num: Coeffs, den: Coeffs, ctx: RingContext) -> tuple[Coeffs, Coeffs]:
    if not den:
        raise ZeroDenominator("zero denominator")
    p, m = ctx.p, ctx.modulus
    if not any(c % p for c in den):
        raise NilpotentDenominator("denominator vanishes mod p")
    if not num:
        return (), (1,)
    if den == (1,):
        return num, den
    q = _exact_div(num, den, ctx)
    if q is not None:
        return q, (1,)
    lo = _low(den)
    if den[lo] % p == 0:
        s = _conjugator(den, ctx)
        num, den = _pmul(num, s, m), _pmul(den, s, m)
        lo = _low(den)
    k = min(lo, _low(num))
    if k:
        num, den = num[k:], den[k:]
        lo -= k
    c = den[lo]
    if c != 1:
        inv = pow(c, -1, m)
        num, den = _pscale(num, inv, m), _pscale(den, inv, m)
    return num, den


class RationalFunction:
    """num/den with the lowest nonzero coefficient of den a unit.

    No reduction to lowest terms is attempted (Z_{p^r}[D] has no gcd);
    equality is by cross-multiplication.
    """

    __slots__ = ("num", "den", "ctx")

    def __init__(self, num, den=None, ctx: RingContext | None = None):
        if ctx is None:
            ctx = num.ctx if isinstance(num, Polynomial) else den.ctx
        n = Polynomial.coerce(num, ctx).coeffs
        d = (1,) if den is None else Polynomial.coerce(den, ctx).coeffs
        n, d = _canonical(n, d, ctx)
        self.num = Polynomial._raw(n, ctx)
        self.den = Polynomial._raw(d, ctx)
        self.ctx = ctx

    @classmethod
    def _raw(cls, num: Coeffs, den: Coeffs, ctx) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num = Polynomial._raw(num, ctx)
        obj.den = Polynomial._raw(den, ctx)
        obj.ctx = ctx
        return obj

    @classmethod
    def _make(cls, num: Coeffs, den: Coeffs, ctx) -> "RationalFunction":
        n, d = _canonical(num, den, ctx)
        return cls._raw(n, d, ctx)

    @classmethod
    def coerce(cls, x, ctx: RingContext) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            if x.ctx != ctx:
                raise ContextMismatch(f"{x.ctx} vs {ctx}")
            return x
        return cls._raw(Polynomial.coerce(x, ctx).coeffs, (1,), ctx)

    def _check(self, other):
        if isinstance(other, RationalFunction):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (Polynomial, int, RingElem)):
            return RationalFunction.coerce(other, self.ctx)
        return NotImplemented

    def is_polynomial(self) -> bool:
        return self.den.coeffs == (1,)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        m = self.ctx.modulus
        a, b, c, d = self.num.coeffs, self.den.coeffs, o.num.coeffs, o.den.coeffs
        if b == d:
            return RationalFunction._make(_padd(a, c, m), b, self.ctx)
        return RationalFunction._make(_padd(_pmul(a, d, m), _pmul(c, b, m), m), _pmul(b, d, m), self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(_psub((), self.num.coeffs, self.ctx.modulus), self.den.coeffs, self.ctx)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        m = self.ctx.modulus
        num = _pmul(self.num.coeffs, o.num.coeffs, m)
        if not num:
            return RationalFunction._raw((), (1,), self.ctx)
        return RationalFunction._make(num, _pmul(self.den.coeffs, o.den.coeffs, m), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def inverse(self) -> "RationalFunction":
        if not self.num.mod_p():
            raise NotAUnit("element vanishes mod p; not a unit of the Laurent ring")
        return RationalFunction._make(self.den.coeffs, self.num.coeffs, self.ctx)

    def __eq__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        m = self.ctx.modulus
        return _pmul(self.num.coeffs, o.den.coeffs, m) == _pmul(o.num.coeffs, self.den.coeffs, m)

    __hash__ = None

    def valuation(self) -> int:
        """p-adic valuation; the denominator is a Laurent unit so only num matters."""
        return self.num.valuation()

    def is_unit(self) -> bool:
        return bool(self.num.mod_p())

    def scale_by_p_power(self, a: int) -> "RationalFunction":
        """The element x with p^a * x == self (self must have valuation >= a)."""
        return RationalFunction._raw(self.num.div_p_power(a).coeffs, self.den.coeffs, self.ctx)

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def make_rational(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Build num/den with an admissible (unit lowest coefficient) denominator."""
    return RationalFunction(num, den, num.ctx)


def rational_inverse(x: RationalFunction) -> RationalFunction:
    return x.inverse()


@dataclass(frozen=True)
class LaurentWindow:
    """Coefficients of a Laurent series for exponents lo .. lo+len-1."""

    lo: int
    coefficients: tuple[int, ...]

    @property
    def hi(self) -> int:
        return self.lo + len(self.coefficients) - 1

    def __getitem__(self, exponent: int) -> int:
        return self.coefficients[exponent - self.lo]


def laurent_expand(x, lo: int, hi: int) -> LaurentWindow:
    """Exact coefficients of the left-compact expansion of x on [lo, hi]."""
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    if not isinstance(x, RationalFunction):
        x = RationalFunction.coerce(x, x.ctx)
    ctx, m = x.ctx, x.ctx.modulus
    num, den = x.num.coeffs, x.den.coeffs
    v = _low(den)
    d0 = den[v:]
    inv = pow(d0[0], -1, m)
    top = hi + v
    series = []
    for t in range(top + 1):
        acc = num[t] if t < len(num) else 0
        for i in range(1, min(t, len(d0) - 1) + 1):
            acc -= d0[i] * series[t - i]
        series.append(acc * inv % m)
    coeffs = tuple(series[e + v] if e + v >= 0 else 0 for e in range(lo, hi + 1))
    return LaurentWindow(lo, coeffs)


def window_product(a: LaurentWindow, b: LaurentWindow, lo: int, hi: int, m: int) -> LaurentWindow:
    """Coefficients of the product of two series on [lo, hi].

    Both inputs must start at or below the true lowest exponent of their
    series and extend far enough that every needed term is covered.
    """
    out = []
    for e in range(lo, hi + 1):
        acc = 0
        for i, c in enumerate(a.coefficients):
            j = e - (a.lo + i)
            if b.lo <= j <= b.hi:
                acc += c * b[j]
        out.append(acc % m)
    return LaurentWindow(lo, tuple(out))


def as_polynomials(values: Sequence, ctx: RingContext) -> tuple[Polynomial, ...]:
    return tuple(Polynomial.coerce(v, ctx) for v in values)
