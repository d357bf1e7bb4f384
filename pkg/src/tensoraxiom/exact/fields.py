"""Exact scalar fields: the rationals and prime fields GF(p).

Rationals are plain :class:`fractions.Fraction` values (always in lowest
terms with a positive denominator).  Prime-field elements are :class:`Mod`
instances whose residue is kept reduced in ``[0, p)``.  Fields are compared
by value, so ``GF(7) == GF(7)`` regardless of where they were built.
"""
from __future__ import annotations

import functools
import operator
import re
from fractions import Fraction

from ..errors import DivisionByZero, MixedFields, ParseError

_MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    for q in _MILLER_RABIN_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MILLER_RABIN_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface of the two supported scalar fields."""

    name: str
    characteristic: int

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        raise NotImplementedError

    def contains(self, value) -> bool:
        raise NotImplementedError

    def parse(self, text) -> object:
        raise NotImplementedError

    def format(self, value) -> str:
        return str(self(value))

    def random(self, rng, spread: int = 5):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, Mod):
            raise MixedFields(f"cannot use {value!r} as a rational")
        if isinstance(value, bool):
            return Fraction(int(value))
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise MixedFields(f"not an exact rational: {value!r}")

    def contains(self, value):
        return isinstance(value, Fraction)

    def parse(self, text):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text.strip()):
            raise ParseError(f"bad rational literal {text!r}")
        try:
            return Fraction(text.strip())
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None

    def random(self, rng, spread=5):
        return Fraction(rng.randint(-spread, spread), rng.randint(1, 3))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or p >= 2**64 or not is_prime(p):
            raise ValueError(f"GF(p) needs a machine-word prime, got {p!r}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value):
        if isinstance(value, Mod):
            if value.field.p != self.p:
                raise MixedFields(f"{value!r} is not in {self.name}")
            return value
        if isinstance(value, Fraction):
            raise MixedFields(f"cannot use rational {value} in {self.name}")
        if isinstance(value, int):
            return Mod(value % self.p, self)
        if isinstance(value, str):
            return self.parse(value)
        raise MixedFields(f"not an element of {self.name}: {value!r}")

    def contains(self, value):
        return isinstance(value, Mod) and value.field.p == self.p

    def parse(self, text):
        if isinstance(text, int) and not isinstance(text, bool):
            return self(text)
        if not isinstance(text, str) or not re.fullmatch(r"[+-]?\d+", text.strip()):
            raise ParseError(f"bad {self.name} literal {text!r}")
        return self(int(text))

    def random(self, rng, spread=5):
        return Mod(rng.randrange(self.p), self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", text)
    if not m:
        raise ParseError(f"unknown field {text!r}")
    try:
        return GF(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def field_of(value) -> Field | None:
    if isinstance(value, Fraction):
        return QQ
    if isinstance(value, Mod):
        return value.field
    return None


class Mod:
    """Residue class modulo a prime, always stored reduced."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value
        self.field = field

    def _other(self, other):
        if isinstance(other, Mod):
            if other.field.p != self.field.p:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        if isinstance(other, Fraction):
            raise MixedFields(f"cannot mix {self.field} with a rational")
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Mod((self.value + v) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Mod((self.value - v) % self.field.p, self.field)

    def __rsub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Mod((v - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Mod(self.value * v % self.field.p, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return self * Mod(v % self.field.p, self.field).inverse()

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Mod(v % self.field.p, self.field) * self.inverse()

    def __neg__(self):
        return Mod(-self.value % self.field.p, self.field)

    def __pos__(self):
        return self

    def inverse(self) -> Mod:
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in {self.field}")
        return Mod(pow(self.value, -1, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Mod({self.value}, {self.field.p})"


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def field_arith(a, b, op: str):
    """Apply ``op`` (add, sub, mul, div) to two scalars of one field."""
    fa, fb = field_of(a), field_of(b)
    if fa is None or fb is None or fa != fb:
        raise MixedFields(f"operands {a!r}, {b!r} are not in one exact field")
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op == "div" and not b:
        raise DivisionByZero("division by zero")
    return _OPS[op](a, b)


def inverse(a):
    if not a:
        raise DivisionByZero("zero has no inverse")
    if isinstance(a, Mod):
        return a.inverse()
    return 1 / a
