"""Realization-independent tensor product machinery.

A :class:`TensorRealization` is a pair (T, theta): a coordinate space T and
a bilinear map theta: X x Y -> T.  Everything in this module talks to a
realization only through theta and its ``factorize`` method, so the same
code checks the quotient realization, the dual realization, sub-products and
deliberately broken realizations alike.

Basis pairs (e_i, d_j) are ordered row-major: pair (i, j) is column
``i * dim Y + j`` of every matrix built here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .bilinear import BilinearMap
from .errors import (
    FactorSpaceMismatch,
    FactorizationError,
    InconsistentSystem,
    MixedFields,
    ShapeMismatch,
    SubspaceNotInAmbient,
)
from .exact.linalg import (
    LinearMap,
    Subspace,
    Vector,
    VectorSpace,
    mat_vec,
    rank,
    solve,
    transpose,
)


def _wrap(label: str) -> str:
    return f"({label})" if "⊗" in label else label


def product_space(X: VectorSpace, Y: VectorSpace) -> VectorSpace:
    """Coefficient-table space of X (x) Y, basis e_i (x) d_j in row-major order."""
    if X.field != Y.field:
        raise MixedFields("factor spaces over different fields")
    return VectorSpace(X.field, X.dim * Y.dim,
                       tuple(f"{_wrap(a)}⊗{_wrap(b)}" for a in X.labels for b in Y.labels))


def outer(x: Vector, y: Vector) -> tuple:
    return tuple(tuple(a * b for b in y.coords) for a in x.coords)


def flatten(table) -> tuple:
    return tuple(v for row in table for v in row)


def unflatten(coords, m: int, n: int) -> tuple:
    coords = tuple(coords)
    return tuple(coords[i * n:(i + 1) * n] for i in range(m))


class TensorRealization:
    """A candidate tensor product (T, theta) of X and Y.

    Subclasses may override :meth:`factorize` with a construction specific
    to their model of T; the default solves Phi o theta = phi on basis pairs.
    """

    name = "generic"

    def __init__(self, X: VectorSpace, Y: VectorSpace, space: VectorSpace,
                 theta: BilinearMap, name: str | None = None):
        if theta.X != X or theta.Y != Y or theta.Z != space:
            raise ShapeMismatch("theta must map X x Y into T")
        self.X = X
        self.Y = Y
        self.space = space
        self.theta = theta
        if name is not None:
            self.name = name

    @property
    def field(self):
        return self.X.field

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}: {self.X.dim}x{self.Y.dim} -> T^{self.space.dim}>"

    def tensor(self, x, y) -> Vector:
        return self.theta(x, y)

    def basis_image_matrix(self) -> tuple:
        """dim T x (dim X * dim Y) matrix whose columns are theta(e_i, d_j)."""
        return self.theta.as_matrix()

    def coordinates(self, table) -> Vector:
        """T-coordinates of sum_ij table[i][j] theta(e_i, d_j)."""
        return Vector(self.space, mat_vec(self.basis_image_matrix(), flatten(table), self.field))

    def table_of(self, t: Vector) -> tuple:
        """Coefficients of ``t`` over the basis tensors theta(e_i, d_j)."""
        m, n = self.X.dim, self.Y.dim
        try:
            sol = solve(self.basis_image_matrix(), tuple((c,) for c in t.coords),
                        self.field, m * n)
        except InconsistentSystem:
            raise SubspaceNotInAmbient("vector is outside the span of theta") from None
        return unflatten((row[0] for row in sol), m, n)

    def factorize(self, phi: BilinearMap) -> LinearMap:
        theta_mat = self.basis_image_matrix()
        phi_mat = phi.as_matrix()
        mn = self.X.dim * self.Y.dim
        try:
            phi_t = solve(transpose(theta_mat, mn), transpose(phi_mat, mn),
                          self.field, self.space.dim)
        except InconsistentSystem:
            raise FactorizationError(
                f"{self.name}: phi does not factor through theta") from None
        return LinearMap.from_columns(self.space, phi.Z, phi_t)


# -- elements ------------------------------------------------------------------

@dataclass(frozen=True)
class TensorElement:
    """Element of X (x) Y as a coefficient table over the basis tensors.

    ``rep`` optionally records one representation sum_i x_i (x) y_i; it is
    not unique, the table is the canonical form.
    """

    realization: TensorRealization = field(compare=False)
    coeffs: tuple
    rep: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        R = self.realization
        if len(self.coeffs) != R.X.dim or any(len(r) != R.Y.dim for r in self.coeffs):
            raise ShapeMismatch("coefficient table does not match the factor dimensions")
        if self.rep is not None and _rep_table(R, self.rep) != self.coeffs:
            raise ValueError("representation does not reproduce the coefficient table")

    @classmethod
    def from_rep(cls, R: TensorRealization, rep) -> TensorElement:
        rep = tuple((R.X.vector(x) if not isinstance(x, Vector) else x,
                     R.Y.vector(y) if not isinstance(y, Vector) else y) for x, y in rep)
        return cls(R, _rep_table(R, rep), rep)

    @property
    def vector(self) -> Vector:
        return self.realization.coordinates(self.coeffs)

    def _same(self, other):
        if not isinstance(other, TensorElement):
            return False
        a, b = self.realization, other.realization
        if (a.X, a.Y) != (b.X, b.Y):
            raise FactorSpaceMismatch("tensor elements over different factor spaces")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        rep = self.rep + other.rep if self.rep is not None and other.rep is not None else None
        return TensorElement(self.realization, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)), rep)

    def __mul__(self, alpha):
        if isinstance(alpha, TensorElement):
            return NotImplemented
        alpha = self.realization.field(alpha)
        rep = tuple((x * alpha, y) for x, y in self.rep) if self.rep is not None else None
        return TensorElement(self.realization,
                             tuple(tuple(alpha * a for a in r) for r in self.coeffs), rep)

    __rmul__ = __mul__

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + other * -1

    def is_zero(self) -> bool:
        return not any(v for r in self.coeffs for v in r)


def _rep_table(R, rep):
    zero = R.field.zero
    acc = [[zero] * R.Y.dim for _ in range(R.X.dim)]
    for x, y in rep:
        for i, a in enumerate(x.coords):
            if a:
                for j, b in enumerate(y.coords):
                    acc[i][j] = acc[i][j] + a * b
    return tuple(tuple(r) for r in acc)


def single_tensor(R: TensorRealization, x, y) -> TensorElement:
    if not isinstance(x, Vector):
        x = R.X.vector(x)
    if not isinstance(y, Vector):
        y = R.Y.vector(y)
    if x.space != R.X or y.space != R.Y:
        raise ShapeMismatch("x, y are not in the factor spaces")
    return TensorElement(R, outer(x, y), ((x, y),))


def span_dimension(elements) -> int:
    elements = list(elements)
    if not elements:
        return 0
    R = elements[0].realization
    return rank([flatten(t.coeffs) for t in elements], R.field, R.X.dim * R.Y.dim)


# -- axioms --------------------------------------------------------------------

@dataclass
class AxiomReport:
    realization: str
    passed: bool = True
    failures: list = field(default_factory=list)
    probes: list = field(default_factory=list)

    def fail(self, axiom: str, detail: str, witness=None):
        self.passed = False
        self.failures.append({"axiom": axiom, "detail": detail, "witness": witness})

    def to_dict(self) -> dict:
        return {
            "realization": self.realization,
            "passed": self.passed,
            "failures": self.failures,
            "probes": self.probes,
        }


def check_axioms(R: TensorRealization, probes=()) -> AxiomReport:
    """Check the span axiom (a) and the factorization axiom (b) on basis pairs."""
    report = AxiomReport(R.name)
    m, n = R.X.dim, R.Y.dim
    theta_mat = R.basis_image_matrix()
    r = rank(theta_mat, R.field, m * n) if theta_mat else 0
    if r != R.space.dim:
        report.fail("a", f"theta spans a {r}-dimensional subspace of the "
                         f"{R.space.dim}-dimensional tensor space", {"rank": r})
    if r != m * n:
        # a tensor product has theta(e_i, d_j) independent, so rank m*n is forced
        report.fail("a", f"theta images of basis pairs have rank {r} < dim X * dim Y = {m * n}",
                    {"rank": r, "expected": m * n})
    for idx, phi in enumerate(probes):
        entry = {"index": idx, "ok": True}
        if phi.X != R.X or phi.Y != R.Y:
            entry["ok"] = False
            report.fail("b", f"probe {idx} is not defined on X x Y", {"probe": idx})
            report.probes.append(entry)
            continue
        try:
            Phi = R.factorize(phi)
        except FactorizationError as exc:
            entry["ok"] = False
            report.fail("b", str(exc), {"probe": idx})
            report.probes.append(entry)
            continue
        bad = None
        for i in range(m):
            for j in range(n):
                lhs = Phi(Vector(R.space, tuple(row[i * n + j] for row in theta_mat)))
                if lhs.coords != phi.value(i, j):
                    bad = (i, j)
                    break
            if bad:
                break
        if bad:
            entry["ok"] = False
            report.fail("b", f"Phi(theta(e_{bad[0]}, d_{bad[1]})) != phi(e_{bad[0]}, d_{bad[1]})",
                        {"probe": idx, "pair": list(bad)})
        entry["injective"] = Phi.is_injective()
        report.probes.append(entry)
    return report


def factorize(R: TensorRealization, phi: BilinearMap) -> LinearMap:
    """The unique linear Phi: T -> Z with Phi o theta = phi."""
    if phi.X != R.X or phi.Y != R.Y:
        raise ShapeMismatch("phi is not defined on the factor spaces of R")
    return R.factorize(phi)


def canonical_iso(R1: TensorRealization, R2: TensorRealization) -> LinearMap:
    """The isomorphism T2 -> T1 carrying theta2 to theta1."""
    if (R1.X, R1.Y) != (R2.X, R2.Y):
        raise FactorSpaceMismatch("realizations of different factor spaces")
    return factorize(R2, R1.theta)


def basis_tensors(R: TensorRealization, E, D) -> list:
    return [single_tensor(R, x, y) for x in E for y in D]


def commute_iso(R_XY: TensorRealization, R_YX: TensorRealization) -> LinearMap:
    """The map x (x) y -> y (x) x, obtained from the universal property of R_XY."""
    if R_YX.X != R_XY.Y or R_YX.Y != R_XY.X:
        raise FactorSpaceMismatch("second realization must have the factors swapped")
    swapped = BilinearMap.from_values(
        R_XY.X, R_XY.Y, R_YX.space, lambda i, j: R_YX.theta.value(j, i))
    return factorize(R_XY, swapped)


# -- sub-products and regular manifolds ----------------------------------------

class SubTensorRealization(TensorRealization):
    """M (x) N = span theta(M x N) inside a parent realization.

    Factor spaces are coordinate spaces over the RREF bases of M and N; the
    tensor space is coordinatized over the RREF basis of ``ambient``.
    """

    def __init__(self, parent: TensorRealization, M: Subspace, N: Subspace):
        self.parent = parent
        self.M = M
        self.N = N
        Ms, Ns = M.basis(), N.basis()
        self.ambient = Subspace.span(parent.space, [parent.theta(a, b) for a in Ms for b in Ns])
        f = parent.field
        X, Y = VectorSpace(f, M.dim), VectorSpace(f, N.dim)
        space = VectorSpace(f, self.ambient.dim)
        theta = BilinearMap.from_values(
            X, Y, space, lambda r, s: self.ambient.coordinates(parent.theta(Ms[r], Ns[s])))
        super().__init__(X, Y, space, theta, name=f"{parent.name}[sub]")

    def inclusion(self) -> LinearMap:
        return LinearMap(self.space, self.parent.space, self.ambient.inclusion().matrix)


def sub_tensor(R: TensorRealization, M: Subspace, N: Subspace) -> TensorRealization:
    if M.ambient != R.X or N.ambient != R.Y:
        raise SubspaceNotInAmbient("M, N must be subspaces of the factor spaces")
    if M.dim == R.X.dim and N.dim == R.Y.dim:
        return R
    return SubTensorRealization(R, M, N)


def regular_subspace(R: TensorRealization, M: Subspace, N: Subspace) -> Subspace:
    """M (x) N as a subspace of R's tensor space."""
    S = sub_tensor(R, M, N)
    if S is R:
        return Subspace.full(R.space)
    return S.ambient


def minimal_regular_cover(R: TensorRealization, U: Subspace):
    """Smallest regular M (x) N containing U, and whether U equals it.

    Each basis element of U is a table C = sum x_i y_i^T; its column space
    lies in X and its row space in Y, so U sits inside M (x) N for M the
    span of all column spaces and N the span of all row spaces, and no
    smaller product contains it.
    """
    if U.ambient != R.space:
        raise SubspaceNotInAmbient("U is not a subspace of the tensor space")
    tables = [R.table_of(u) for u in U.basis()]
    cols = [col for t in tables for col in transpose(t, R.X.dim)]
    rows = [row for t in tables for row in t]
    M = Subspace.span(R.X, cols)
    N = Subspace.span(R.Y, rows)
    return M, N, U.dim == M.dim * N.dim


# -- iterated products ---------------------------------------------------------

def iterated_product(spaces, realization=None) -> TensorRealization:
    """Left fold ((X1 (x) X2) (x) X3) ... of pairwise tensor products.

    ``realization`` builds the pairwise product from two spaces; it defaults
    to the quotient realization.
    """
    spaces = list(spaces)
    if len(spaces) < 2:
        raise ValueError("an iterated product needs at least two factors")
    fields = {s.field for s in spaces}
    if len(fields) > 1:
        raise MixedFields("factors over different fields")
    if realization is None:
        from .realizations import QuotientRealization as realization
    R = realization(spaces[0], spaces[1])
    for S in spaces[2:]:
        R = realization(R.space, S)
    R.factors = tuple(spaces)
    assert R.space.dim == prod(s.dim for s in spaces)
    return R


def rebracket(X: VectorSpace, Y: VectorSpace, Z: VectorSpace) -> LinearMap:
    """(X (x) Y) (x) Z -> X (x) (Y (x) Z), sending (e_i d_j) f_k to e_i (d_j f_k)."""
    left = product_space(product_space(X, Y), Z)
    right = product_space(X, product_space(Y, Z))
    m, n, p = X.dim, Y.dim, Z.dim
    f = X.field
    mat = [[f.zero] * left.dim for _ in range(right.dim)]
    for i in range(m):
        for j in range(n):
            for k in range(p):
                src = (i * n + j) * p + k
                dst = i * (n * p) + (j * p + k)
                mat[dst][src] = f.one
    return LinearMap(left, right, tuple(tuple(r) for r in mat))
