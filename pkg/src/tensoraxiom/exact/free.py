"""The free linear space on the carrier set X x Y.

A :class:`FreeVector` is a finitely supported scalar function on pairs
``(x, y)``.  Distinct pairs are distinct basis functions even when they
are linearly related as vectors: ``e_(x,y)`` and ``e_(2x,y)`` never merge.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import MixedCarriers, MixedFields, ParseError, ShapeMismatch
from .linalg import Vector, VectorSpace


@dataclass(frozen=True, order=True)
class CarrierKey:
    """Canonical byte encoding of an exact coordinate pair ``(x, y)``."""

    data: bytes

    @classmethod
    def of(cls, x: Vector, y: Vector) -> CarrierKey:
        if x.space.field != y.space.field:
            raise MixedFields("carrier pair over two different fields")
        text = "{}|{}|{}".format(
            x.space.field.name,
            ",".join(str(c) for c in x.coords),
            ",".join(str(c) for c in y.coords),
        )
        return cls(text.encode("ascii"))

    def decode(self, X: VectorSpace, Y: VectorSpace) -> tuple:
        try:
            name, xs, ys = self.data.decode("ascii").split("|")
        except ValueError:
            raise ParseError(f"malformed carrier key {self.data!r}") from None
        if name != X.field.name:
            raise MixedFields(f"key over {name}, spaces over {X.field}")
        xc = [X.field.parse(t) for t in xs.split(",")] if xs else []
        yc = [Y.field.parse(t) for t in ys.split(",")] if ys else []
        return X.vector(xc), Y.vector(yc)


class FreeVector:
    """Finite formal combination ``sum a_k e_(x_k, y_k)`` with no zero coefficients."""

    __slots__ = ("X", "Y", "_terms")

    def __init__(self, X: VectorSpace, Y: VectorSpace, terms=None):
        if X.field != Y.field:
            raise MixedFields("factor spaces over different fields")
        self.X = X
        self.Y = Y
        clean = {}
        for key, coeff in (terms or {}).items():
            coeff = X.field(coeff)
            if coeff:
                clean[key] = coeff
        self._terms = tuple(sorted(clean.items()))

    @property
    def field(self):
        return self.X.field

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def support(self) -> list:
        return [k for k, _ in self._terms]

    def pairs(self):
        """Yield ``(coeff, x, y)`` for every supported carrier point."""
        for key, coeff in self._terms:
            x, y = key.decode(self.X, self.Y)
            yield coeff, x, y

    def _check(self, other):
        if not isinstance(other, FreeVector):
            return False
        if (other.X, other.Y) != (self.X, self.Y):
            raise MixedCarriers("free vectors over different carrier sets")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        acc = dict(self._terms)
        zero = self.field.zero
        for k, c in other._terms:
            acc[k] = acc.get(k, zero) + c
        return FreeVector(self.X, self.Y, acc)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, alpha):
        if isinstance(alpha, FreeVector):
            return NotImplemented
        alpha = self.field(alpha)
        return FreeVector(self.X, self.Y, {k: alpha * c for k, c in self._terms})

    __rmul__ = __mul__

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return (self.X, self.Y, self._terms) == (other.X, other.Y, other._terms)

    def __hash__(self):
        return hash((self.X, self.Y, self._terms))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __repr__(self):
        inner = " + ".join(f"{c}*e[{k.data.decode()}]" for k, c in self._terms)
        return f"FreeVector({inner or '0'})"


def free_embed(x: Vector, y: Vector) -> FreeVector:
    """Characteristic function of the single carrier point ``(x, y)``."""
    if x.space.field != y.space.field:
        raise MixedFields("x and y are over different fields")
    return FreeVector(x.space, y.space, {CarrierKey.of(x, y): x.space.field.one})


def free_combine(terms) -> FreeVector:
    """Linear combination of ``(scalar, FreeVector)`` pairs."""
    terms = list(terms)
    if not terms:
        raise ShapeMismatch("free_combine needs at least one term to fix the carrier")
    X, Y = terms[0][1].X, terms[0][1].Y
    acc = FreeVector(X, Y)
    for alpha, f in terms:
        if (f.X, f.Y) != (X, Y):
            raise MixedCarriers("free vectors over different carrier sets")
        acc = acc + f * alpha
    return acc
