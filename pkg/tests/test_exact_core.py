from fractions import Fraction

import pytest
from conftest import FIELDS, maps, scalars, spaces, vectors
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tensoraxiom.errors import (
    DivisionByZero,
    KernelConditionViolated,
    MixedCarriers,
    MixedFields,
    ParseError,
    SubspaceNotInAmbient,
)
from tensoraxiom.exact import (
    GF,
    QQ,
    CarrierKey,
    FreeVector,
    LinearMap,
    Subspace,
    VectorSpace,
    complement,
    factor_through_quotient,
    field_arith,
    free_combine,
    free_embed,
    image_basis,
    is_prime,
    kernel_basis,
    parse_field,
    quotient,
    rref,
)
from tensoraxiom.exact.fields import inverse
from tensoraxiom.exact.linalg import rank

Q2 = VectorSpace(QQ, 2)
Q1 = VectorSpace(QQ, 1)


def qmap(X, V, rows):
    return LinearMap.from_rows(X, V, rows)


# -- scalars -------------------------------------------------------------------

def test_rational_sum():
    assert field_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)


def test_inverse_mod_7():
    # frozen from oracles.modular_inverse_scan(3, 7)
    assert oracles.modular_inverse_scan(3, 7) == 5
    assert inverse(GF(7)(3)) == GF(7)(5)


@given(st.sampled_from(FIELDS).flatmap(scalars))
def test_times_inverse_is_one(a):
    if a:
        f = QQ if isinstance(a, Fraction) else a.field
        assert a * inverse(a) == f.one


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        field_arith(Fraction(1), GF(7)(1), "add")
    with pytest.raises(MixedFields):
        GF(5)(1) + GF(7)(1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_arith(Fraction(1), Fraction(0), "div")
    with pytest.raises(DivisionByZero):
        inverse(GF(7)(0))


def test_prime_check():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    with pytest.raises(ParseError):
        parse_field("GF(8)")
    assert GF(7)(-1) == GF(7)(6)
    assert Fraction(6, -4) == Fraction(-3, 2)  # canonical sign in the denominator


# -- rref ----------------------------------------------------------------------

def test_rref_rank_one():
    ech, piv, r = rref([[1, 2], [2, 4]], QQ)
    assert (r, piv) == (1, (0,))
    want, want_piv = oracles.rref_rational([[1, 2], [2, 4]])
    assert [list(row) for row in ech] == want and list(piv) == want_piv


def test_rref_identity(field):
    I = tuple(tuple(field.one if i == j else field.zero for j in range(3)) for i in range(3))
    ech, piv, r = rref(I, field)
    assert ech == I and r == 3


def test_rref_gf2():
    # oracles.rank_mod_p gives rank 2 for a 2x2 matrix, so its RREF is the identity
    assert oracles.rank_mod_p([[1, 1], [1, 2]], 2, 2) == 2
    F = GF(2)
    ech, piv, r = rref([[1, 1], [1, 2]], F)
    assert ech == ((F(1), F(0)), (F(0), F(1))) and r == 2


@given(st.data())
def test_rref_idempotent_and_matches_sympy(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, V = data.draw(spaces(f, 5)), data.draw(spaces(f, 5))
    A = data.draw(maps(X, V))
    ech, piv, r = rref(A.matrix, f)
    assert rref(ech, f) == (ech, piv, r)
    if f is QQ:
        want, want_piv = oracles.rref_rational(A.matrix)
        assert [list(row) for row in ech] == want and list(piv) == want_piv
    else:
        rows = [[int(v) for v in row] for row in A.matrix]
        assert r == oracles.rank_mod_p(rows, X.dim, 7)


# -- kernel, image, complement -------------------------------------------------

def test_kernel_examples():
    assert kernel_basis(qmap(Q2, Q1, [[1, -1]])) == Subspace.span(Q2, [(1, 1)])
    assert oracles.kernel_rational([[1, -1]], 2) == [[1, 1]]
    assert kernel_basis(LinearMap.identity(Q2)).dim == 0
    Q3 = VectorSpace(QQ, 3)
    assert kernel_basis(LinearMap.zero(Q3, Q3)) == Subspace.full(Q3)


def test_image_examples():
    assert image_basis(qmap(Q2, Q2, [[1, 0], [0, 0]])) == Subspace.span(Q2, [(1, 0)])
    assert image_basis(LinearMap.identity(Q2)) == Subspace.full(Q2)
    assert oracles.column_space_rational([[1, 2], [2, 4]]) == [[1, 2]]
    assert image_basis(qmap(Q2, Q2, [[1, 2], [2, 4]])) == Subspace.span(Q2, [(1, 2)])


def test_complement_examples():
    M = Subspace.span(Q2, [(1, 1)])
    assert complement(M) == Subspace.span(Q2, [(0, 1)])
    assert complement(Subspace.zero(Q2)) == Subspace.full(Q2)
    assert complement(Subspace.full(Q2)).dim == 0


@given(st.data())
def test_rank_nullity(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, V = data.draw(spaces(f, 6)), data.draw(spaces(f, 6))
    L = data.draw(maps(X, V))
    N = kernel_basis(L)
    assert N.dim + image_basis(L).dim == X.dim
    assert all(L(v).is_zero() for v in N.basis())


@given(st.data())
def test_complement_is_direct(data):
    f = data.draw(st.sampled_from(FIELDS))
    X = data.draw(spaces(f, 5))
    M = Subspace.span(X, [data.draw(vectors(X)) for _ in range(data.draw(st.integers(0, 4)))])
    C = complement(M)
    assert M.dim + C.dim == X.dim
    assert (M + C).dim == X.dim


# -- quotients -----------------------------------------------------------------

def test_quotient_sign_relation():
    Q = quotient(Q2, Subspace.span(Q2, [(1, 1)]))
    a, b = Q.project(Q2.vector((1, 0))), Q.project(Q2.vector((0, 1)))
    assert Q.dim == 1 and a == b * -1 and not a.is_zero()
    assert Q.same_coset(Q2.vector((3, 1)), Q2.vector((4, 2)))


def test_quotient_extremes():
    Q = quotient(Q2, Subspace.zero(Q2))
    assert Q.projection.rank() == 2
    Q = quotient(Q2, Subspace.full(Q2))
    assert Q.dim == 0 and all(Q.project(v).is_zero() for v in Q2.basis())


def test_quotient_rejects_foreign_subspace():
    with pytest.raises(SubspaceNotInAmbient):
        quotient(Q2, Subspace.full(VectorSpace(QQ, 3)))


def test_factor_through_quotient_examples():
    M = Subspace.span(Q2, [(1, 1)])
    Q = quotient(Q2, M)
    L = qmap(Q2, Q1, [[1, -1]])
    Lh = factor_through_quotient(L, Q)
    assert Lh.domain.dim == 1
    assert Lh(Q.project(Q2.vector((1, 0)))) == Q1.vector((1,))
    assert Lh @ Q.projection == L
    assert factor_through_quotient(Q.projection, Q) == LinearMap.identity(Q.space)
    with pytest.raises(KernelConditionViolated):
        factor_through_quotient(qmap(Q2, Q1, [[1, 0]]), Q)


@given(st.data())
def test_quotient_universal_property(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, V = data.draw(spaces(f, 5)), data.draw(spaces(f, 4))
    L = data.draw(maps(X, V))
    NL = kernel_basis(L)
    picks = data.draw(st.lists(st.sampled_from(NL.basis()), max_size=NL.dim)) if NL.dim else []
    M = Subspace.span(X, picks)
    Q = quotient(X, M)
    Lh = factor_through_quotient(L, Q)
    assert all(Lh(Q.project(e)) == L(e) for e in X.basis())
    assert kernel_basis(Lh).dim == NL.dim - M.dim
    assert image_basis(Lh) == image_basis(L)
    # the images of the standard basis span X/M
    assert rank([Q.project(e).coords for e in X.basis()], f, Q.dim) == Q.dim
    assert all(Q.project(m).is_zero() for m in M.basis())
    assert all(Q.project(Q.representative(q)) == q for q in Q.space.basis())


# -- free vectors --------------------------------------------------------------

def test_free_embed_examples():
    x, y = Q2.vector((1, 0)), Q2.vector((0, 1))
    e = free_embed(x, y)
    assert e.support() == [CarrierKey.of(x, y)] and e.terms[CarrierKey.of(x, y)] == 1
    assert (e - free_embed(x, y)).is_zero()
    assert not set(e.support()) & set(free_embed(x * 2, y).support())


def test_free_combine_examples():
    x, y = Q2.vector((1, 0)), Q2.vector((0, 1))
    s, t = free_embed(x, y), free_embed(y, x)
    assert free_combine([(2, s), (3, s)]).terms == {CarrierKey.of(x, y): 5}
    assert free_combine([(1, s), (-1, s)]).is_zero()
    assert len(free_combine([(1, s), (1, t)])) == 2
    other = free_embed(VectorSpace(QQ, 3).vector((1, 0, 0)), y)
    with pytest.raises(MixedCarriers):
        free_combine([(1, s), (1, other)])


def test_free_embed_mixed_fields():
    with pytest.raises(MixedFields):
        free_embed(Q2.vector((1, 0)), VectorSpace(GF(7), 1).vector((1,)))


def test_carrier_key_injective_and_decodes():
    F = GF(7)
    X = VectorSpace(F, 2)
    keys = {CarrierKey.of(X.vector((a, b)), X.vector((c, 0)))
            for a in range(7) for b in range(7) for c in range(7)}
    assert len(keys) == 7 ** 3
    x, y = Q2.vector((Fraction(1, 3), -2)), Q2.vector((0, Fraction(5, 7)))
    assert CarrierKey.of(x, y).decode(Q2, Q2) == (x, y)


@given(st.data())
def test_free_space_axioms(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, Y = data.draw(spaces(f, 2)), data.draw(spaces(f, 2))
    pts = [free_embed(data.draw(vectors(X)), data.draw(vectors(Y))) for _ in range(3)]
    a, b = data.draw(scalars(f)), data.draw(scalars(f))
    u, v, w = pts
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert (u + v) * a == u * a + v * a
    assert u * (a + b) == u * a + u * b
    assert free_combine([(a, u), (b, v)]) == u * a + v * b
    assert isinstance(u - u, FreeVector) and (u - u).is_zero()
