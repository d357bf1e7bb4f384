"""Tensor products of linear maps in coordinates.

A map A: X -> V and B: Y -> W give A (x) B: X (x) Y -> V (x) W acting on
coefficient tables.  With row-major basis pairs the matrix entry at
((k, l), (i, j)) is A[k][i] * B[l][j], the usual Kronecker product.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bilinear import BilinearMap
from .errors import MixedFields, ShapeMismatch
from .exact.fields import QQ
from .exact.linalg import LinearMap, Subspace, VectorSpace, transpose
from .tensor import TensorRealization, flatten, product_space, unflatten


@dataclass(frozen=True, eq=False)
class KronMap(LinearMap):
    """A LinearMap on a product space that remembers the factors it was built from."""

    factors: tuple | None = None


def kron(A: LinearMap, B: LinearMap) -> KronMap:
    if A.field != B.field:
        raise MixedFields("kron of maps over different fields")
    domain = product_space(A.domain, B.domain)
    codomain = product_space(A.codomain, B.codomain)
    mat = tuple(
        tuple(a * b for a in arow for b in brow)
        for arow in A.matrix for brow in B.matrix)
    if not mat:
        mat = ()
    return KronMap(domain, codomain, mat, (A, B))


def adjoint(L: LinearMap) -> LinearMap:
    """L#: V# -> X#, g -> g o L; the transpose in coordinates."""
    return LinearMap(L.codomain.dual(), L.domain.dual(), transpose(L.matrix, L.domain.dim))


def shuffle_permutation(m, n, field=QQ) -> LinearMap:
    """Permutation X (x) Y -> Y (x) X sending basis tensor (i, j) to (j, i).

    ``m`` and ``n`` are either dimensions or the spaces themselves.
    """
    X = m if isinstance(m, VectorSpace) else VectorSpace(field, m)
    Y = n if isinstance(n, VectorSpace) else VectorSpace(field, n)
    f = X.field
    dm, dn = X.dim, Y.dim
    mat = [[f.zero] * (dm * dn) for _ in range(dm * dn)]
    for i in range(dm):
        for j in range(dn):
            mat[j * dm + i][i * dn + j] = f.one
    return LinearMap(product_space(X, Y), product_space(Y, X), tuple(tuple(r) for r in mat))


# -- the realization on map spaces ---------------------------------------------

def map_space(X: VectorSpace, V: VectorSpace) -> VectorSpace:
    """L[X, V] with matrix units ordered row-major over the V.dim x X.dim entries."""
    return VectorSpace(X.field, V.dim * X.dim,
                       tuple(f"E{k},{i}" for k in range(V.dim) for i in range(X.dim)))


def vec(A: LinearMap) -> tuple:
    return flatten(A.matrix)


def unvec(coords, X: VectorSpace, V: VectorSpace) -> LinearMap:
    return LinearMap.from_rows(X, V, unflatten(coords, V.dim, X.dim))


class MapTensorRealization(TensorRealization):
    """L[X,V] (x) L[Y,W] realized as span{A (x) B} inside L[X (x) Y, V (x) W]."""

    name = "maps"

    def __init__(self, X: VectorSpace, V: VectorSpace, Y: VectorSpace, W: VectorSpace):
        self.X0, self.V0, self.Y0, self.W0 = X, V, Y, W
        LX, LY = map_space(X, V), map_space(Y, W)
        XY, VW = product_space(X, Y), product_space(V, W)
        self.ambient_map_space = map_space(XY, VW)
        units_x = [unvec(e.coords, X, V) for e in LX.basis()]
        units_y = [unvec(e.coords, Y, W) for e in LY.basis()]
        theta = BilinearMap.from_values(
            LX, LY, self.ambient_map_space,
            lambda a, b: vec(kron(units_x[a], units_y[b])))
        super().__init__(LX, LY, self.ambient_map_space, theta)

    def embed(self, K: LinearMap):
        """Coordinates in T of a map X (x) Y -> V (x) W."""
        XY = product_space(self.X0, self.Y0)
        VW = product_space(self.V0, self.W0)
        if K.domain != XY or K.codomain != VW:
            raise ShapeMismatch("map is not in L[X (x) Y, V (x) W]")
        return self.space.vector(vec(K))

    def span_subspace(self) -> Subspace:
        return Subspace.span(self.space, [c.coords for c in
                                          (self.theta(a, b) for a in self.X.basis()
                                           for b in self.Y.basis())])


def map_tensor_realization(X, V, Y, W) -> MapTensorRealization:
    return MapTensorRealization(X, V, Y, W)


def map_tensor_factorize(phi: BilinearMap, R: MapTensorRealization) -> LinearMap:
    """Phi with Phi(sum A_i (x) B_i) = sum phi(A_i, B_i)."""
    if phi.X != R.X or phi.Y != R.Y:
        raise ShapeMismatch("phi must be defined on L[X,V] x L[Y,W]")
    return R.factorize(phi)


def dual_product_span(X: VectorSpace, Y: VectorSpace) -> Subspace:
    """span{f (x) g : f in X#, g in Y#} inside (X (x) Y)#, as rows of 1 x mn matrices."""
    F = VectorSpace(X.field, 1)
    XY = product_space(X, Y)
    fs = [LinearMap(X, F, (e.coords,)) for e in X.basis()]
    gs = [LinearMap(Y, F, (d.coords,)) for d in Y.basis()]
    dual = VectorSpace(X.field, XY.dim)
    return Subspace.span(dual, [kron(f, g).matrix[0] for f in fs for g in gs])
