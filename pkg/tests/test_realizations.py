import itertools
import random
from fractions import Fraction

import pytest
from conftest import FIELDS, scalars, spaces, vectors
from hypothesis import given
from hypothesis import strategies as st
from test_bilinear import bilinear_maps

import oracles
from tensoraxiom.bilinear import BilinearMap, matrix_unit_bilinear
from tensoraxiom.errors import MixedCarriers, NonRealField, ShapeMismatch
from tensoraxiom.exact import GF, QQ, LinearMap, VectorSpace, free_combine, free_embed
from tensoraxiom.realizations import (
    RELATION_FAMILIES,
    DualRealization,
    DualTensor,
    QuotientRealization,
    additive_left,
    additive_right,
    apply_form,
    factorize_dual,
    factorize_quotient,
    homogeneous_left,
    homogeneous_right,
    inner_eval,
    member_relation_span,
    normal_form,
    random_relation,
    rank_one_form,
    theta_dual,
    theta_quotient,
)
from tensoraxiom.tensor import canonical_iso, check_axioms, flatten, single_tensor

Q1, Q2 = VectorSpace(QQ, 1), VectorSpace(QQ, 2)
e0, e1 = Q2.basis()


# -- normal form ---------------------------------------------------------------

def test_normal_form_examples():
    assert normal_form(free_embed(e0, e1)) == ((0, 1), (0, 0))
    gen = free_embed(e0 + e1, e0) - free_embed(e0, e0) - free_embed(e1, e0)
    assert normal_form(gen) == ((0, 0), (0, 0))
    ones = Q2.vector((1, 1))
    assert normal_form(free_embed(ones, ones)) == tuple(
        tuple(r) for r in oracles.outer_table([1, 1], [1, 1]))


def test_membership_examples():
    assert not member_relation_span(free_embed(e0, e0))
    rng = random.Random(3)
    x, y = Q2.random_vector(rng), Q2.random_vector(rng)
    assert member_relation_span(homogeneous_left(Fraction(3, 2), x, y))


def test_relation_generators_by_hand():
    x, x2, y, y2 = Q2.vector((1, 2)), Q2.vector((0, -1)), Q2.vector((3, 0)), Q2.vector((1, 1))
    for g in (additive_left(x, x2, y), additive_right(x, y, y2),
              homogeneous_left(5, x, y), homogeneous_right(Fraction(-1, 3), x, y)):
        assert member_relation_span(g)
        assert len(g) >= 2  # the generator is a nonzero free vector


@given(st.data())
def test_relation_soundness(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, Y = data.draw(spaces(f, 4)), data.draw(spaces(f, 4))
    family = data.draw(st.sampled_from(RELATION_FAMILIES))
    rng = random.Random(data.draw(st.integers(0, 2 ** 32)))
    assert member_relation_span(random_relation(family, X, Y, rng))


@given(st.data())
def test_well_defined_on_cosets(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, Y = data.draw(spaces(f, 3)), data.draw(spaces(f, 3))
    rng = random.Random(data.draw(st.integers(0, 2 ** 32)))
    base = free_combine([(f.random(rng), free_embed(X.random_vector(rng), Y.random_vector(rng)))
                         for _ in range(3)])
    shift = free_combine([(f.random(rng), random_relation(fam, X, Y, rng))
                          for fam in RELATION_FAMILIES])
    assert normal_form(base + shift) == normal_form(base)


@given(st.data())
def test_normal_form_is_linear(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, Y = data.draw(spaces(f, 3)), data.draw(spaces(f, 3))
    u = free_embed(data.draw(vectors(X)), data.draw(vectors(Y)))
    v = free_embed(data.draw(vectors(X)), data.draw(vectors(Y)))
    a = data.draw(scalars(f))
    lhs = normal_form(u * a + v)
    rhs = tuple(tuple(p * a + q for p, q in zip(r, s))
                for r, s in zip(normal_form(u), normal_form(v)))
    assert lhs == rhs


def test_project_rejects_other_carrier():
    R = QuotientRealization(Q2, Q2)
    with pytest.raises(MixedCarriers):
        R.project(free_embed(e0, Q1.vector((1,))))


# -- quotient realization ------------------------------------------------------

def test_theta_quotient_matches_single_tensor():
    R = QuotientRealization(Q2, Q2)
    for x, y in [(e0, e1), (Q2.vector((1, 1)), Q2.vector((1, -1))), (Q2.zero(), e1)]:
        assert theta_quotient(x, y).coeffs == single_tensor(R, x, y).coeffs
    assert theta_quotient(Q2.zero(), e1).is_zero()


def test_factorize_quotient_examples():
    phi = matrix_unit_bilinear(Q2.basis(), Q2.basis())
    Phi = factorize_quotient(phi)
    assert Phi.rank() == 4 and Phi.matrix == LinearMap.identity(Phi.codomain).matrix
    assert factorize_quotient(BilinearMap.zero(Q2, Q2, Q1)).rank() == 0
    x0y0 = BilinearMap.from_values(Q2, Q2, Q1, lambda i, j: (int(i == j == 0),))
    Phi = factorize_quotient(x0y0)
    C = ((Fraction(3), Fraction(-1)), (Fraction(2), Fraction(7)))
    assert Phi(Phi.domain.vector(flatten(C))).coords == (3,)


@given(bilinear_maps())
def test_quotient_factorization_agrees_with_lift(phi):
    R = QuotientRealization(phi.X, phi.Y)
    Phi = R.factorize(phi)
    lifted = R.lift_bilinear(phi)
    rng = random.Random(0)
    f = free_combine([(phi.field.random(rng), free_embed(phi.X.random_vector(rng),
                                                          phi.Y.random_vector(rng)))
                      for _ in range(3)])
    assert Phi(R.project(f)) == lifted(f)


# -- dual realization ----------------------------------------------------------

def test_theta_dual_examples():
    rng = random.Random(5)
    psi = BilinearMap.random(Q2, Q2, Q2, rng)
    assert theta_dual(e0, e1)(psi) == psi(e0, e1)
    t = theta_dual(Q2.vector((2, 0)), Q2.vector((0, 3)))
    assert t.coeffs == tuple(tuple(r) for r in oracles.outer_table([2, 0], [0, 3]))
    psi2 = BilinearMap.random(Q2, Q2, Q2, rng)
    assert t(psi + psi2) == t(psi) + t(psi2)


def test_dual_tensor_shape_checks():
    with pytest.raises(ShapeMismatch):
        DualTensor(Q2, Q2, ((1, 0),))
    with pytest.raises(ShapeMismatch):
        theta_dual(e0, e1)(BilinearMap.zero(Q1, Q2, Q1))


def test_apply_form_examples():
    t = theta_dual(e0, e0)
    assert apply_form(t, (1, 0), (1, 0)) == 1
    C = DualTensor(Q2, Q2, tuple(tuple(Fraction(v) for v in r) for r in ((1, 2), (3, 4))))
    assert apply_form(C, (1, 1), (1, -1)) == -2


@given(st.data())
def test_apply_form_bilinear_and_rank_one(data):
    f = data.draw(st.sampled_from(FIELDS))
    X, Y = data.draw(spaces(f, 3)), data.draw(spaces(f, 3))
    x, y = data.draw(vectors(X)), data.draw(vectors(Y))
    mu, mu2, nu = data.draw(vectors(X)), data.draw(vectors(X)), data.draw(vectors(Y))
    a = data.draw(scalars(f))
    t = theta_dual(x, y) + theta_dual(data.draw(vectors(X)), data.draw(vectors(Y)))
    assert apply_form(t, mu + mu2 * a, nu) == apply_form(t, mu, nu) + apply_form(t, mu2, nu) * a
    assert apply_form(t, mu, nu) == t(rank_one_form(mu, nu, X, Y)).coords[0]
    dot = lambda u, v: sum((p * q for p, q in zip(u.coords, v.coords)), f.zero)  # noqa: E731
    assert apply_form(theta_dual(x, y), mu, nu) == dot(mu, x) * dot(nu, y)


def test_inner_eval_examples():
    assert inner_eval(theta_dual(e0, e0), e0, e0) == 1
    assert inner_eval(theta_dual(e0, e0), e1, e0) == 0
    x, y = Q2.vector((1, 2)), Q1.vector((3,))
    assert inner_eval(theta_dual(x, y), (1, 1), (2,)) == 18
    F = VectorSpace(GF(7), 1)
    with pytest.raises(NonRealField):
        inner_eval(theta_dual(F.vector((1,)), F.vector((1,))), (1,), (1,))


def test_factorize_dual_agrees_through_iso():
    Rq, Rd = QuotientRealization(Q2, Q2), DualRealization(Q2, Q2)
    iso = canonical_iso(Rd, Rq)
    cases = [matrix_unit_bilinear(Q2.basis(), Q2.basis()), BilinearMap.zero(Q2, Q2, Q1),
             BilinearMap.from_values(Q2, Q2, Q1, lambda i, j: (int(i == j == 0),))]
    for phi in cases:
        assert factorize_dual(phi) @ iso == factorize_quotient(phi)


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
def test_both_realizations_satisfy_axioms(field):
    rng = random.Random(11)
    for m, n in itertools.product(range(1, 5), repeat=2):
        X, Y = VectorSpace(field, m), VectorSpace(field, n)
        probes = [BilinearMap.random(X, Y, VectorSpace(field, rng.randint(1, 3)), rng)
                  for _ in range(5)]
        for cls in (QuotientRealization, DualRealization):
            assert check_axioms(cls(X, Y), probes).passed


def test_coherent_coordinates():
    for m, n in itertools.product(range(1, 4), repeat=2):
        X, Y = VectorSpace(QQ, m), VectorSpace(QQ, n)
        iso = canonical_iso(QuotientRealization(X, Y), DualRealization(X, Y))
        assert iso.matrix == LinearMap.identity(iso.domain).matrix
