"""Bilinear maps X x Y -> Z stored as dense coefficient 3-tensors."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DependentInput, MixedFields, ShapeMismatch, SubspaceNotInAmbient
from .exact.linalg import (
    LinearMap,
    Subspace,
    Vector,
    VectorSpace,
    invert_matrix,
    mat_vec,
    transpose,
)


@dataclass(frozen=True)
class BilinearMap:
    """``coeffs[k][i][j]`` is the k-th coordinate of phi(e_i, d_j)."""

    X: VectorSpace
    Y: VectorSpace
    Z: VectorSpace
    coeffs: tuple

    def __post_init__(self):
        f = self.X.field
        if self.Y.field != f or self.Z.field != f:
            raise MixedFields("bilinear map spaces over different fields")
        c = self.coeffs
        if (len(c) != self.Z.dim
                or any(len(s) != self.X.dim for s in c)
                or any(len(r) != self.Y.dim for s in c for r in s)):
            raise ShapeMismatch(
                f"coefficients do not have shape {self.Z.dim}x{self.X.dim}x{self.Y.dim}")
        if not all(f.contains(v) for s in c for r in s for v in r):
            raise MixedFields(f"coefficients are not all in {f}")

    @classmethod
    def from_coeffs(cls, X, Y, Z, coeffs) -> BilinearMap:
        f = X.field
        return cls(X, Y, Z, tuple(tuple(tuple(f(v) for v in r) for r in s) for s in coeffs))

    @classmethod
    def from_values(cls, X, Y, Z, value) -> BilinearMap:
        """Build from ``value(i, j)``, the image of the basis pair (e_i, d_j) as a Vector or coords."""
        table = [[tuple(value(i, j)) for j in range(Y.dim)] for i in range(X.dim)]
        coeffs = tuple(
            tuple(tuple(Z.field(table[i][j][k]) for j in range(Y.dim)) for i in range(X.dim))
            for k in range(Z.dim))
        return cls(X, Y, Z, coeffs)

    @classmethod
    def zero(cls, X, Y, Z) -> BilinearMap:
        z = X.field.zero
        return cls(X, Y, Z, tuple(tuple((z,) * Y.dim for _ in range(X.dim)) for _ in range(Z.dim)))

    @classmethod
    def random(cls, X, Y, Z, rng) -> BilinearMap:
        f = X.field
        return cls(X, Y, Z, tuple(
            tuple(tuple(f.random(rng) for _ in range(Y.dim)) for _ in range(X.dim))
            for _ in range(Z.dim)))

    @property
    def field(self):
        return self.X.field

    def __call__(self, x: Vector, y: Vector) -> Vector:
        return eval_bilinear(self, x, y)

    def value(self, i: int, j: int) -> tuple:
        """Coordinates of phi(e_i, d_j)."""
        return tuple(s[i][j] for s in self.coeffs)

    def _same(self, other):
        if not isinstance(other, BilinearMap):
            return False
        if (other.X, other.Y, other.Z) != (self.X, self.Y, self.Z):
            raise ShapeMismatch("bilinear maps between different spaces")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return BilinearMap(self.X, self.Y, self.Z, tuple(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(s1, s2))
            for s1, s2 in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + other * -1

    def __mul__(self, alpha):
        if isinstance(alpha, (BilinearMap, Vector)):
            return NotImplemented
        alpha = self.field(alpha)
        return BilinearMap(self.X, self.Y, self.Z, tuple(
            tuple(tuple(alpha * v for v in r) for r in s) for s in self.coeffs))

    __rmul__ = __mul__

    def compose(self, L: LinearMap) -> BilinearMap:
        """``L o phi``, again bilinear."""
        if L.domain != self.Z:
            raise ShapeMismatch("L is not defined on the codomain of phi")
        return BilinearMap.from_values(
            self.X, self.Y, L.codomain,
            lambda i, j: mat_vec(L.matrix, self.value(i, j), self.field))

    def as_matrix(self) -> tuple:
        """The Z.dim x (X.dim * Y.dim) matrix with row-major basis-pair columns."""
        return tuple(tuple(v for r in s for v in r) for s in self.coeffs)


def _check_arg(v, space, name):
    if not isinstance(v, Vector):
        v = space.vector(v)
    if v.space.field != space.field:
        raise MixedFields(f"{name} is over {v.space.field}, expected {space.field}")
    if v.space.dim != space.dim:
        raise ShapeMismatch(f"{name} has dimension {v.space.dim}, expected {space.dim}")
    return v


def eval_bilinear(phi: BilinearMap, x, y) -> Vector:
    x = _check_arg(x, phi.X, "x")
    y = _check_arg(y, phi.Y, "y")
    zero = phi.field.zero
    xs = [(i, a) for i, a in enumerate(x.coords) if a]
    ys = [(j, b) for j, b in enumerate(y.coords) if b]
    out = []
    for s in phi.coeffs:
        acc = zero
        for i, a in xs:
            row = s[i]
            for j, b in ys:
                if row[j]:
                    acc = acc + a * b * row[j]
        out.append(acc)
    return Vector(phi.Z, tuple(out))


def section_left(phi: BilinearMap, y) -> LinearMap:
    """phi(., y) as a map X -> Z."""
    y = _check_arg(y, phi.Y, "y")
    return LinearMap.from_columns(phi.X, phi.Z, [phi(e, y).coords for e in phi.X.basis()])


def section_right(phi: BilinearMap, x) -> LinearMap:
    """phi(x, .) as a map Y -> Z."""
    x = _check_arg(x, phi.X, "x")
    return LinearMap.from_columns(phi.Y, phi.Z, [phi(x, d).coords for d in phi.Y.basis()])


def restrict_bilinear(phi: BilinearMap, M: Subspace, N: Subspace) -> BilinearMap:
    """phi on M x N, written in the RREF bases of M and N."""
    if M.ambient != phi.X or N.ambient != phi.Y:
        raise SubspaceNotInAmbient("M, N must be subspaces of the factor spaces of phi")
    Ms, Ns = M.basis(), N.basis()
    return BilinearMap.from_values(
        VectorSpace(phi.field, M.dim), VectorSpace(phi.field, N.dim), phi.Z,
        lambda r, s: phi(Ms[r], Ns[s]).coords)


def extend_bilinear(phi: BilinearMap, M: Subspace, N: Subspace,
                    X: VectorSpace, Y: VectorSpace) -> BilinearMap:
    """Extend phi from M x N to X x Y, zero on every block touching a complement.

    ``phi`` is written in the RREF bases of M and N.  An input x splits
    uniquely as m + c with c in the canonical complement; the M-coordinates
    of x are then just its entries at M's pivot columns.
    """
    if M.ambient != X or N.ambient != Y:
        raise SubspaceNotInAmbient("M, N must be subspaces of X, Y")
    if phi.X.dim != M.dim or phi.Y.dim != N.dim:
        raise ShapeMismatch("phi is not written on bases of M and N")
    f = X.field
    zero = f.zero
    xpos = {p: r for r, p in enumerate(M.pivots)}
    ypos = {q: s for s, q in enumerate(N.pivots)}
    coeffs = tuple(
        tuple(
            tuple(
                s[xpos[i]][ypos[j]] if i in xpos and j in ypos else zero
                for j in range(Y.dim))
            for i in range(X.dim))
        for s in phi.coeffs)
    return BilinearMap(X, Y, phi.Z, coeffs)


def _expansion_matrix(vectors, space):
    """Matrix turning a vector of ``space`` into its coefficients over ``vectors``.

    Vectors outside the span are first projected onto it along the canonical
    complement; the result is the coefficient map used by the zero-fill rule.
    """
    S = Subspace.span(space, vectors)
    if S.dim != len(vectors):
        raise DependentInput("input vectors are linearly dependent")
    f = space.field
    # vectors = G * rows(S), with G[k][r] = vectors[k][pivot_r]
    g = tuple(tuple(v[p] for p in S.pivots) for v in vectors)
    gt_inv = invert_matrix(transpose(g, 0), f) if vectors else ()
    rows = []
    for row in gt_inv:
        full = [f.zero] * space.dim
        for r, p in enumerate(S.pivots):
            full[p] = row[r]
        rows.append(tuple(full))
    return tuple(rows)


def matrix_unit_bilinear(E, D, X: VectorSpace | None = None,
                         Y: VectorSpace | None = None) -> BilinearMap:
    """phi(u, v) = outer product of the coefficient vectors of u over E and v over D.

    The codomain has dimension |E|*|D| with row-major matrix-unit order, so
    phi(E[j], D[k]) is the matrix unit at (j, k).
    """
    E, D = list(E), list(D)
    X = X or E[0].space
    Y = Y or D[0].space
    for v in E:
        if v.space != X:
            raise ShapeMismatch("E must lie in X")
    for v in D:
        if v.space != Y:
            raise ShapeMismatch("D must lie in Y")
    if X.field != Y.field:
        raise MixedFields("X and Y over different fields")
    bx = _expansion_matrix(E, X)
    by = _expansion_matrix(D, Y)
    ell, m = len(E), len(D)
    Z = VectorSpace(X.field, ell * m, tuple(f"P{j},{k}" for j in range(ell) for k in range(m)))
    return BilinearMap(X, Y, Z, tuple(
        tuple(tuple(bx[j][i] * by[k][jj] for jj in range(Y.dim)) for i in range(X.dim))
        for j in range(ell) for k in range(m)))
