"""Exact finite-dimensional linear algebra over QQ and GF(p).

Matrices are tuples of row tuples.  Everything here is immutable; the
elimination routines copy their input before working on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from ..errors import (
    DependentInput,
    InconsistentSystem,
    KernelConditionViolated,
    MixedFields,
    ShapeMismatch,
    SubspaceNotInAmbient,
)
from .fields import Field, field_of, inverse

Matrix = tuple  # tuple[tuple[scalar, ...], ...]


# -- raw matrix helpers --------------------------------------------------------

def coerce_matrix(rows, field: Field, ncols: int | None = None) -> Matrix:
    out = tuple(tuple(field(x) for x in row) for row in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ShapeMismatch("ragged matrix")
    if ncols is not None and out and widths != {ncols}:
        raise ShapeMismatch(f"expected {ncols} columns, got {widths.pop()}")
    return out


def infer_field(rows) -> Field | None:
    found = None
    for row in rows:
        for x in row:
            f = field_of(x)
            if f is None:
                continue
            if found is None:
                found = f
            elif f != found:
                raise MixedFields(f"matrix mixes {found} and {f}")
    return found


def rref(rows, field: Field | None = None, ncols: int | None = None):
    """Reduced row-echelon form by Gauss-Jordan elimination.

    Returns ``(echelon, pivots, rank)``; ``echelon`` has the same shape as
    the input with zero rows moved to the bottom.
    """
    if field is None:
        field = infer_field(rows)
        if field is None:
            from .fields import QQ
            field = QQ
    a = [list(r) for r in coerce_matrix(rows, field, ncols)]
    nrows = len(a)
    width = len(a[0]) if a else (ncols or 0)
    pivots = []
    r = 0
    for c in range(width):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = inverse(a[r][c])
        if a[r][c] != 1:
            a[r] = [x * inv for x in a[r]]
        pivot_row = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pivot_row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in a), tuple(pivots), len(pivots)


def rank(rows, field: Field, ncols: int | None = None) -> int:
    return rref(rows, field, ncols)[2]


def transpose(rows, nrows_if_empty: int = 0) -> Matrix:
    if not rows:
        return tuple(() for _ in range(nrows_if_empty))
    return tuple(zip(*rows))


def mat_mul(a: Matrix, b: Matrix, field: Field) -> Matrix:
    bt = transpose(b)
    zero = field.zero
    if not bt:
        # b has zero columns
        return tuple(() for _ in a)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), zero) for col in bt)
        for row in a
    )


def mat_vec(a: Matrix, v: Sequence, field: Field) -> tuple:
    zero = field.zero
    return tuple(sum((x * y for x, y in zip(row, v)), zero) for row in a)


def identity_matrix(n: int, field: Field) -> Matrix:
    one, zero = field.one, field.zero
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zero_matrix(nrows: int, ncols: int, field: Field) -> Matrix:
    zero = field.zero
    return tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows))


def solve(a: Matrix, b: Matrix, field: Field, ncols: int) -> Matrix:
    """One solution X (ncols x k) of A X = B; free variables are set to zero.

    Raises InconsistentSystem when no solution exists.
    """
    nrows = len(a)
    k = len(b[0]) if b else 0
    aug = [tuple(a[i]) + tuple(b[i]) for i in range(nrows)]
    ech, pivots, rk = rref(aug, field, ncols + k) if aug else ((), (), 0)
    if any(p >= ncols for p in pivots):
        raise InconsistentSystem("linear system has no solution")
    x = [[field.zero] * k for _ in range(ncols)]
    for r, p in enumerate(pivots):
        x[p] = list(ech[r][ncols:])
    return tuple(tuple(row) for row in x)


def invert_matrix(a: Matrix, field: Field) -> Matrix:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeMismatch("only square matrices can be inverted")
    ech, pivots, rk = rref(
        [tuple(a[i]) + identity_matrix(n, field)[i] for i in range(n)], field, 2 * n
    )
    if rk < n or pivots[: n] != tuple(range(n)):
        raise DependentInput("matrix is singular")
    return tuple(tuple(row[n:]) for row in ech)


# -- spaces and vectors --------------------------------------------------------

@dataclass(frozen=True)
class VectorSpace:
    """Coordinate space F^dim with named basis vectors."""

    field: Field
    dim: int
    labels: tuple = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        labels = self.labels
        if labels is None:
            labels = tuple(f"e{i}" for i in range(self.dim))
        labels = tuple(str(lbl) for lbl in labels)
        if len(labels) != self.dim:
            raise ShapeMismatch(f"{len(labels)} labels for dimension {self.dim}")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        object.__setattr__(self, "labels", labels)

    def vector(self, coords) -> Vector:
        return Vector(self, tuple(self.field(c) for c in coords))

    def zero(self) -> Vector:
        return Vector(self, (self.field.zero,) * self.dim)

    def basis(self) -> list:
        m = identity_matrix(self.dim, self.field)
        return [Vector(self, row) for row in m]

    def random_vector(self, rng) -> Vector:
        return Vector(self, tuple(self.field.random(rng) for _ in range(self.dim)))

    def dual(self) -> VectorSpace:
        """Coordinate dual; taking it twice returns an equal space."""
        if self.labels and all(lbl.endswith("#") for lbl in self.labels):
            labels = tuple(lbl[:-1] for lbl in self.labels)
        else:
            labels = tuple(lbl + "#" for lbl in self.labels)
        return VectorSpace(self.field, self.dim, labels)

    def __repr__(self):
        return f"VectorSpace({self.field}, {self.dim})"


@dataclass(frozen=True)
class Vector:
    space: VectorSpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise ShapeMismatch(
                f"{len(self.coords)} coordinates for a {self.space.dim}-dimensional space"
            )
        f = self.space.field
        if not all(f.contains(c) for c in self.coords):
            raise MixedFields(f"coordinates are not all in {f}")

    def _check(self, other):
        if not isinstance(other, Vector):
            return False
        if other.space != self.space:
            if other.space.field != self.space.field:
                raise MixedFields(f"{self.space.field} vs {other.space.field}")
            raise ShapeMismatch("vectors live in different spaces")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return Vector(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return Vector(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Vector(self.space, tuple(-a for a in self.coords))

    def __mul__(self, alpha):
        if isinstance(alpha, Vector):
            return NotImplemented
        alpha = self.space.field(alpha)
        return Vector(self.space, tuple(alpha * a for a in self.coords))

    __rmul__ = __mul__

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return f"Vector({[str(c) for c in self.coords]})"


# -- linear maps ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearMap:
    """Matrix of shape ``codomain.dim x domain.dim`` between two spaces."""

    domain: VectorSpace
    codomain: VectorSpace
    matrix: Matrix

    def __post_init__(self):
        if self.domain.field != self.codomain.field:
            raise MixedFields("domain and codomain are over different fields")
        if len(self.matrix) != self.codomain.dim or any(
            len(row) != self.domain.dim for row in self.matrix
        ):
            raise ShapeMismatch(
                f"matrix shape does not match {self.codomain.dim}x{self.domain.dim}"
            )
        f = self.domain.field
        if not all(f.contains(x) for row in self.matrix for x in row):
            raise MixedFields(f"matrix entries are not all in {f}")

    @classmethod
    def from_rows(cls, domain, codomain, rows) -> LinearMap:
        return cls(domain, codomain, coerce_matrix(rows, domain.field))

    @classmethod
    def from_columns(cls, domain, codomain, columns) -> LinearMap:
        cols = [tuple(c) for c in columns]
        rows = transpose(cols, codomain.dim) if cols else tuple(() for _ in range(codomain.dim))
        return cls.from_rows(domain, codomain, rows)

    @classmethod
    def identity(cls, space) -> LinearMap:
        return cls(space, space, identity_matrix(space.dim, space.field))

    @classmethod
    def zero(cls, domain, codomain) -> LinearMap:
        return cls(domain, codomain, zero_matrix(codomain.dim, domain.dim, domain.field))

    @property
    def field(self) -> Field:
        return self.domain.field

    def __call__(self, v: Vector) -> Vector:
        if not isinstance(v, Vector):
            v = self.domain.vector(v)
        if v.space != self.domain:
            raise ShapeMismatch("vector is not in the domain of the map")
        return Vector(self.codomain, mat_vec(self.matrix, v.coords, self.field))

    def __matmul__(self, other: LinearMap) -> LinearMap:
        """Composition ``self o other``."""
        if not isinstance(other, LinearMap):
            return NotImplemented
        if other.codomain != self.domain:
            raise ShapeMismatch("composition of maps with unmatched spaces")
        if other.field != self.field:
            raise MixedFields("composition across fields")
        if self.domain.dim == 0:
            return LinearMap.zero(other.domain, self.codomain)
        return LinearMap(other.domain, self.codomain,
                         mat_mul(self.matrix, other.matrix, self.field))

    def _same_shape(self, other):
        if not isinstance(other, LinearMap):
            return False
        if other.domain != self.domain or other.codomain != self.codomain:
            raise ShapeMismatch("maps between different spaces")
        return True

    def __add__(self, other):
        if not self._same_shape(other):
            return NotImplemented
        return LinearMap(self.domain, self.codomain, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __sub__(self, other):
        if not self._same_shape(other):
            return NotImplemented
        return LinearMap(self.domain, self.codomain, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __neg__(self):
        return self * -1

    def __mul__(self, alpha):
        if isinstance(alpha, (LinearMap, Vector)):
            return NotImplemented
        alpha = self.field(alpha)
        return LinearMap(self.domain, self.codomain,
                         tuple(tuple(alpha * a for a in r) for r in self.matrix))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix))

    def columns(self) -> list:
        return [Vector(self.codomain, tuple(row[j] for row in self.matrix))
                for j in range(self.domain.dim)]

    def rank(self) -> int:
        return rank(self.matrix, self.field, self.domain.dim)

    def is_injective(self) -> bool:
        return self.rank() == self.domain.dim

    def inverse(self) -> LinearMap:
        if self.domain.dim != self.codomain.dim:
            raise DependentInput("map between spaces of different dimension")
        return LinearMap(self.codomain, self.domain, invert_matrix(self.matrix, self.field))

    def __repr__(self):
        rows = [[str(x) for x in r] for r in self.matrix]
        return f"LinearMap({self.domain.dim}->{self.codomain.dim}, {rows})"


# -- subspaces -----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of ``ambient`` kept as the nonzero rows of its RREF basis."""

    ambient: VectorSpace
    rows: Matrix
    pivots: tuple = dc_field(compare=False)

    @classmethod
    def span(cls, ambient: VectorSpace, vectors: Iterable) -> Subspace:
        coords = []
        for v in vectors:
            if isinstance(v, Vector):
                if v.space != ambient:
                    raise SubspaceNotInAmbient("spanning vector lies outside the ambient space")
                coords.append(v.coords)
            else:
                coords.append(tuple(ambient.field(x) for x in v))
                if len(coords[-1]) != ambient.dim:
                    raise SubspaceNotInAmbient("spanning vector has the wrong length")
        if not coords:
            return cls(ambient, (), ())
        ech, pivots, rk = rref(coords, ambient.field, ambient.dim)
        return cls(ambient, ech[:rk], pivots)

    @classmethod
    def zero(cls, ambient) -> Subspace:
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient) -> Subspace:
        return cls(ambient, identity_matrix(ambient.dim, ambient.field), tuple(range(ambient.dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def field(self) -> Field:
        return self.ambient.field

    def basis(self) -> list:
        return [Vector(self.ambient, row) for row in self.rows]

    def _as_coords(self, v):
        if isinstance(v, Vector):
            if v.space != self.ambient:
                raise SubspaceNotInAmbient("vector lies outside the ambient space")
            return v.coords
        return tuple(self.field(x) for x in v)

    def contains(self, v) -> bool:
        x = list(self._as_coords(v))
        for row, p in zip(self.rows, self.pivots):
            if x[p]:
                f = x[p]
                x = [a - f * b for a, b in zip(x, row)]
        return not any(x)

    __contains__ = contains

    def coordinates(self, v) -> tuple:
        """Coefficients of ``v`` over the RREF basis rows."""
        x = self._as_coords(v)
        if not self.contains(x):
            raise SubspaceNotInAmbient("vector is not in the subspace")
        return tuple(x[p] for p in self.pivots)

    def from_coordinates(self, coeffs) -> Vector:
        acc = [self.field.zero] * self.ambient.dim
        for a, row in zip(coeffs, self.rows):
            a = self.field(a)
            if a:
                acc = [s + a * r for s, r in zip(acc, row)]
        return Vector(self.ambient, tuple(acc))

    def __le__(self, other: Subspace) -> bool:
        if other.ambient != self.ambient:
            raise SubspaceNotInAmbient("subspaces of different spaces")
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: Subspace) -> Subspace:
        if other.ambient != self.ambient:
            raise SubspaceNotInAmbient("subspaces of different spaces")
        return Subspace.span(self.ambient, self.rows + other.rows)

    def inclusion(self) -> LinearMap:
        """The map F^dim -> ambient sending coordinate vectors to the subspace."""
        return LinearMap.from_columns(VectorSpace(self.field, self.dim), self.ambient, self.rows)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient.dim}, rows={[[str(x) for x in r] for r in self.rows]})"


def kernel_basis(L: LinearMap) -> Subspace:
    n = L.domain.dim
    field = L.field
    ech, pivots, rk = rref(L.matrix, field, n) if L.matrix else ((), (), 0)
    free = [c for c in range(n) if c not in pivots]
    vectors = []
    for c in free:
        v = [field.zero] * n
        v[c] = field.one
        for r, p in enumerate(pivots):
            v[p] = -ech[r][c]
        vectors.append(tuple(v))
    return Subspace.span(L.domain, vectors)


def image_basis(L: LinearMap) -> Subspace:
    return Subspace.span(L.codomain, transpose(L.matrix, L.domain.dim) if L.codomain.dim else ())


def complement(M: Subspace) -> Subspace:
    """Standard basis vectors at the non-pivot columns of M's RREF."""
    X = M.ambient
    pivots = set(M.pivots)
    basis = X.basis()
    return Subspace.span(X, [basis[c] for c in range(X.dim) if c not in pivots])


@dataclass(frozen=True)
class QuotientSpace:
    """X/M with the canonical complement as the space of coset representatives."""

    ambient: VectorSpace
    subspace: Subspace
    complement: Subspace
    space: VectorSpace
    projection: LinearMap

    @property
    def dim(self) -> int:
        return self.space.dim

    def project(self, x) -> Vector:
        return self.projection(x)

    def same_coset(self, x, y) -> bool:
        return self.projection(x) == self.projection(y)

    def representative(self, q) -> Vector:
        """The unique complement vector in the coset ``q``."""
        if not isinstance(q, Vector):
            q = self.space.vector(q)
        return self.complement.from_coordinates(q.coords)


def quotient(X: VectorSpace, M: Subspace) -> QuotientSpace:
    if M.ambient != X:
        raise SubspaceNotInAmbient("M is not a subspace of X")
    C = complement(M)
    free = [c for c in range(X.dim) if c not in set(M.pivots)]
    space = VectorSpace(X.field, len(free), tuple(f"[{X.labels[c]}]" for c in free))
    field = X.field
    # pi(x)_t = x[j_t] - sum_r x[p_r] * R[r][j_t]
    rows = []
    for j in free:
        row = [field.zero] * X.dim
        row[j] = field.one
        for r, p in enumerate(M.pivots):
            row[p] = -M.rows[r][j]
        rows.append(tuple(row))
    return QuotientSpace(X, M, C, space, LinearMap(X, space, tuple(rows)))


def factor_through_quotient(L: LinearMap, Q: QuotientSpace) -> LinearMap:
    """The unique map L_hat on X/M with L = L_hat o pi."""
    if L.domain != Q.ambient:
        raise ShapeMismatch("L is not defined on the ambient space of the quotient")
    for m in Q.subspace.basis():
        if not L(m).is_zero():
            raise KernelConditionViolated(f"L does not annihilate {m!r}")
    columns = [L(c).coords for c in Q.complement.basis()]
    return LinearMap.from_columns(Q.space, L.codomain, columns)
