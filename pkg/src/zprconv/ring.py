"""Arithmetic in Z_{p^r}: contexts, elements, p-adic digits and valuations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering

from .errors import ContextMismatch, InvalidContext, NotAUnit

MAX_PRIME = 2**16
MAX_MODULUS = 2**63


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingContext:
    """The ring Z_{p^r} together with its digit set {0, ..., p-1}."""

    p: int
    r: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise InvalidContext("p must be an integer")
        if isinstance(self.r, bool) or not isinstance(self.r, int):
            raise InvalidContext("r must be an integer")
        if self.p > MAX_PRIME:
            raise InvalidContext(f"p must be at most {MAX_PRIME}")
        if not is_prime(self.p):
            raise InvalidContext("p must be prime")
        if self.r < 1:
            raise InvalidContext("r must be at least 1")
        m = self.p**self.r
        if m >= MAX_MODULUS:
            raise InvalidContext("p^r must be below 2^63")
        object.__setattr__(self, "modulus", m)

    @property
    def digit_set(self) -> range:
        return range(self.p)

    def reduce(self, x: int) -> int:
        return x % self.modulus

    def is_unit(self, x: int) -> bool:
        return x % self.p != 0

    def inv(self, x: int) -> int:
        x %= self.modulus
        if x % self.p == 0:
            raise NotAUnit(f"{x} is not a unit of Z_{self.modulus}")
        return pow(x, -1, self.modulus)

    def valuation(self, x: int) -> int:
        """Largest j <= r with p^j | x; the zero element has valuation r."""
        x %= self.modulus
        if x == 0:
            return self.r
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def digits(self, x: int) -> tuple[int, ...]:
        x %= self.modulus
        out = []
        for _ in range(self.r):
            x, d = divmod(x, self.p)
            out.append(d)
        return tuple(out)

    def __call__(self, value: int) -> "RingElem":
        return RingElem(value, self)


@total_ordering
@dataclass(frozen=True)
class RingElem:
    """An element of Z_{p^r}, stored as its least non-negative residue."""

    value: int
    context: RingContext

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.context.modulus)

    def _other(self, other) -> int:
        if isinstance(other, RingElem):
            if other.context != self.context:
                raise ContextMismatch(f"{self.context} vs {other.context}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.value + o, self.context)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.value - o, self.context)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(o - self.value, self.context)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.value * o, self.context)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(-self.value, self.context)

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.context == other.context and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.context.modulus
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.value, self.context))

    def __int__(self):
        return self.value

    def inverse(self) -> "RingElem":
        return RingElem(self.context.inv(self.value), self.context)

    def is_unit(self) -> bool:
        return self.context.is_unit(self.value)

    def __repr__(self):
        return f"{self.value} (mod {self.context.modulus})"


def ring_arithmetic(a: RingElem, b: RingElem | None, op: str) -> RingElem:
    """Apply ``op`` in {add, sub, mul, neg, inv} to ``a`` (and ``b`` for binary ops)."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if a.context != b.context:
        raise ContextMismatch(f"{a.context} vs {b.context}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def p_adic_expand(x: RingElem) -> tuple[int, ...]:
    """Digits (a_0, ..., a_{r-1}) in {0..p-1} with x = sum a_i p^i."""
    return x.context.digits(x.value)


def p_valuation(x: RingElem) -> int:
    return x.context.valuation(x.value)
