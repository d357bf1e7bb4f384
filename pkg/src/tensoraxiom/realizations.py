"""Two concrete tensor products of finite-dimensional spaces.

``QuotientRealization``: the free linear space on X x Y modulo the span M
of the four families of bilinearity relations.  M is never materialized;
cosets are decided by a normal form that rewrites every carrier point
e_(x,y) into the basis-pair points e_(e_i,d_j).  Each rewrite subtracts an
explicit combination of relation generators, so two free vectors share a
normal form exactly when they differ by an element of M.

``DualRealization``: single tensors as linear functionals on the space of
scalar bilinear forms, (x (x) y)(psi) = psi(x, y).  A functional is stored
by its values on the matrix-unit forms psi_ij.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from .bilinear import BilinearMap
from .errors import MixedCarriers, NonRealField, ShapeMismatch
from .exact.fields import RationalField
from .exact.free import FreeVector, free_embed
from .exact.linalg import LinearMap, Vector, VectorSpace
from .tensor import (
    TensorElement,
    TensorRealization,
    flatten,
    outer,
    product_space,
    unflatten,
)


# -- relation generators -------------------------------------------------------

def additive_left(x1: Vector, x2: Vector, y: Vector) -> FreeVector:
    """e_(x1+x2, y) - e_(x1, y) - e_(x2, y)"""
    return free_embed(x1 + x2, y) - free_embed(x1, y) - free_embed(x2, y)


def additive_right(x: Vector, y1: Vector, y2: Vector) -> FreeVector:
    """e_(x, y1+y2) - e_(x, y1) - e_(x, y2)"""
    return free_embed(x, y1 + y2) - free_embed(x, y1) - free_embed(x, y2)


def homogeneous_left(alpha, x: Vector, y: Vector) -> FreeVector:
    """e_(alpha x, y) - alpha e_(x, y)"""
    return free_embed(x * alpha, y) - free_embed(x, y) * alpha


def homogeneous_right(alpha, x: Vector, y: Vector) -> FreeVector:
    """e_(x, alpha y) - alpha e_(x, y)"""
    return free_embed(x, y * alpha) - free_embed(x, y) * alpha


RELATION_FAMILIES = ("additive_left", "additive_right", "homogeneous_left", "homogeneous_right")


def random_relation(family: str, X: VectorSpace, Y: VectorSpace, rng) -> FreeVector:
    f = X.field
    if family == "additive_left":
        return additive_left(X.random_vector(rng), X.random_vector(rng), Y.random_vector(rng))
    if family == "additive_right":
        return additive_right(X.random_vector(rng), Y.random_vector(rng), Y.random_vector(rng))
    if family == "homogeneous_left":
        return homogeneous_left(f.random(rng), X.random_vector(rng), Y.random_vector(rng))
    if family == "homogeneous_right":
        return homogeneous_right(f.random(rng), X.random_vector(rng), Y.random_vector(rng))
    raise ValueError(f"unknown relation family {family!r}")


# -- quotient realization ------------------------------------------------------

def normal_form(f: FreeVector) -> tuple:
    """Coefficient table of the coset f + M.

    For each carrier point e_(x,y), the difference
    e_(x,y) - sum_ij x_i y_j e_(e_i,d_j) lies in M (expand x with the left
    families, then y with the right ones), so the coset is represented by
    the table x_i y_j over basis pairs.
    """
    X, Y = f.X, f.Y
    zero = f.field.zero
    acc = [[zero] * Y.dim for _ in range(X.dim)]
    for coeff, x, y in f.pairs():
        for i, a in enumerate(x.coords):
            if not a:
                continue
            ca = coeff * a
            row = acc[i]
            for j, b in enumerate(y.coords):
                if b:
                    row[j] = row[j] + ca * b
    return tuple(tuple(r) for r in acc)


def member_relation_span(f: FreeVector) -> bool:
    """True iff f lies in the span M of the bilinearity relations."""
    return not any(v for row in normal_form(f) for v in row)


class QuotientRealization(TensorRealization):
    name = "quotient"

    def __init__(self, X: VectorSpace, Y: VectorSpace):
        space = product_space(X, Y)
        Xb, Yb = X.basis(), Y.basis()
        theta = BilinearMap.from_values(
            X, Y, space,
            lambda i, j: flatten(normal_form(free_embed(Xb[i], Yb[j]))))
        super().__init__(X, Y, space, theta)

    def project(self, f: FreeVector) -> Vector:
        """pi: S_e -> S_e / M in table coordinates."""
        if (f.X, f.Y) != (self.X, self.Y):
            raise MixedCarriers("free vector over a different carrier set")
        return Vector(self.space, flatten(normal_form(f)))

    def tensor(self, x, y) -> Vector:
        return self.project(free_embed(x, y))

    def lift_bilinear(self, phi: BilinearMap):
        """The linear map on the free space with e_(x,y) -> phi(x,y)."""
        def Phi_tilde(f: FreeVector) -> Vector:
            acc = phi.Z.zero()
            for coeff, x, y in f.pairs():
                acc = acc + phi(x, y) * coeff
            return acc
        return Phi_tilde

    def factorize(self, phi: BilinearMap) -> LinearMap:
        # Phi_tilde kills M because phi is bilinear, so it factors through pi;
        # each basis class [e_(e_i,d_j)] has that single carrier point as representative.
        lifted = self.lift_bilinear(phi)
        Xb, Yb = self.X.basis(), self.Y.basis()
        columns = [lifted(free_embed(x, y)).coords for x in Xb for y in Yb]
        return LinearMap.from_columns(self.space, phi.Z, columns)


@functools.lru_cache(maxsize=256)
def quotient_realization(X: VectorSpace, Y: VectorSpace) -> QuotientRealization:
    return QuotientRealization(X, Y)


def theta_quotient(x: Vector, y: Vector) -> TensorElement:
    R = quotient_realization(x.space, y.space)
    table = normal_form(free_embed(x, y))
    return TensorElement(R, table, ((x, y),))


def factorize_quotient(phi: BilinearMap) -> LinearMap:
    return quotient_realization(phi.X, phi.Y).factorize(phi)


# -- dual realization ----------------------------------------------------------

@dataclass(frozen=True)
class DualTensor:
    """Linear functional on bilinear maps, psi -> sum_ij C_ij psi(e_i, d_j)."""

    X: VectorSpace
    Y: VectorSpace
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.X.dim or any(len(r) != self.Y.dim for r in self.coeffs):
            raise ShapeMismatch("coefficient table does not match X x Y")

    def __call__(self, psi: BilinearMap) -> Vector:
        if (psi.X, psi.Y) != (self.X, self.Y):
            raise ShapeMismatch("bilinear map on different spaces")
        acc = psi.Z.zero()
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    acc = acc + Vector(psi.Z, psi.value(i, j)) * c
        return acc

    def __add__(self, other):
        if not isinstance(other, DualTensor):
            return NotImplemented
        if (other.X, other.Y) != (self.X, self.Y):
            raise ShapeMismatch("dual tensors over different spaces")
        return DualTensor(self.X, self.Y, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def __mul__(self, alpha):
        alpha = self.X.field(alpha)
        return DualTensor(self.X, self.Y, tuple(tuple(alpha * a for a in r) for r in self.coeffs))

    __rmul__ = __mul__


def form_basis(X: VectorSpace, Y: VectorSpace) -> list:
    """Matrix-unit scalar forms psi_ij(x, y) = x_i y_j, row-major."""
    F = VectorSpace(X.field, 1)
    one, zero = X.field.one, X.field.zero
    return [BilinearMap.from_values(X, Y, F, lambda a, b, i=i, j=j: (one if (a, b) == (i, j) else zero,))
            for i in range(X.dim) for j in range(Y.dim)]


def component_forms(phi: BilinearMap) -> list:
    """Split a Z-valued bilinear map into its dim Z scalar coordinate forms."""
    F = VectorSpace(phi.field, 1)
    return [BilinearMap(phi.X, phi.Y, F, (s,)) for s in phi.coeffs]


def theta_dual(x: Vector, y: Vector) -> DualTensor:
    return DualTensor(x.space, y.space, outer(x, y))


class DualRealization(TensorRealization):
    name = "dual"

    def __init__(self, X: VectorSpace, Y: VectorSpace):
        self.forms = form_basis(X, Y)
        self._table_space = space = product_space(X, Y)
        Xb, Yb = X.basis(), Y.basis()
        theta = BilinearMap.from_values(
            X, Y, space, lambda i, j: self.coordinates_of(theta_dual(Xb[i], Yb[j])).coords)
        super().__init__(X, Y, space, theta)

    def coordinates_of(self, t: DualTensor) -> Vector:
        """T-coordinates of a functional: its values on the matrix-unit forms."""
        return Vector(self._table_space, tuple(t(psi).coords[0] for psi in self.forms))

    def functional(self, coords) -> DualTensor:
        return DualTensor(self.X, self.Y, unflatten(coords, self.X.dim, self.Y.dim))

    def tensor(self, x, y) -> Vector:
        return self.coordinates_of(theta_dual(x, y))

    def factorize(self, phi: BilinearMap) -> LinearMap:
        # Phi(t) = (t(phi_1), ..., t(phi_k)) for the coordinate forms phi_k of phi
        comps = component_forms(phi)
        columns = []
        for e in self.space.basis():
            t = self.functional(e.coords)
            columns.append(tuple(t(c).coords[0] for c in comps))
        return LinearMap.from_columns(self.space, phi.Z, columns)


@functools.lru_cache(maxsize=256)
def dual_realization(X: VectorSpace, Y: VectorSpace) -> DualRealization:
    return DualRealization(X, Y)


def factorize_dual(phi: BilinearMap) -> LinearMap:
    return dual_realization(phi.X, phi.Y).factorize(phi)


def _coords(v, dim, field):
    coords = v.coords if isinstance(v, Vector) else tuple(field(c) for c in v)
    if len(coords) != dim:
        raise ShapeMismatch(f"expected {dim} coordinates, got {len(coords)}")
    return coords


def apply_form(t: DualTensor, mu, nu):
    """mu^T C nu; on x (x) y this is mu(x) nu(y)."""
    f = t.X.field
    mu = _coords(mu, t.X.dim, f)
    nu = _coords(nu, t.Y.dim, f)
    acc = f.zero
    for i, row in enumerate(t.coeffs):
        if mu[i]:
            acc = acc + mu[i] * sum((c * b for c, b in zip(row, nu)), f.zero)
    return acc


def inner_eval(t: DualTensor, u, v):
    """Euclidean pairing: (x (x) y)(u, v) = <x, u> <y, v>, extended linearly."""
    if not isinstance(t.X.field, RationalField):
        raise NonRealField("inner products need an ordered real field")
    return apply_form(t, u, v)


def rank_one_form(mu, nu, X: VectorSpace, Y: VectorSpace) -> BilinearMap:
    """psi(x, y) = mu(x) nu(y) as a scalar bilinear form."""
    f = X.field
    mu = _coords(mu, X.dim, f)
    nu = _coords(nu, Y.dim, f)
    return BilinearMap.from_values(X, Y, VectorSpace(f, 1), lambda i, j: (mu[i] * nu[j],))
