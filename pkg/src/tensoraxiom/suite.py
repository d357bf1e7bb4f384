"""Seeded acceptance checks, shared by the ``suite`` CLI verb and the tests.

Each ``criterion_*`` function takes a seed and returns a plain dict with a
``passed`` flag, a check count and the first few failures.  Nothing in a
report depends on wall-clock time, so two runs with one seed print the
same bytes.
"""
from __future__ import annotations

import itertools
import random

import numpy as np

from .bilinear import BilinearMap
from .crossnorm import (
    INF,
    TAGS,
    RealTensor,
    hilbert_norm,
    injective_norm,
    lp_norm,
    projective_norm,
    tag_str,
)
from .exact.fields import GF, QQ
from .exact.linalg import (
    LinearMap,
    Subspace,
    VectorSpace,
    factor_through_quotient,
    image_basis,
    kernel_basis,
    quotient,
    rank,
)
from .kron import adjoint, kron, shuffle_permutation
from .realizations import (
    RELATION_FAMILIES,
    DualRealization,
    QuotientRealization,
    member_relation_span,
    quotient_realization,
    random_relation,
)
from .tensor import (
    basis_tensors,
    canonical_iso,
    check_axioms,
    flatten,
    iterated_product,
    rebracket,
    regular_subspace,
)

FIELDS = (QQ, GF(7))
MAX_LISTED = 5


class _Tally:
    def __init__(self, number: int, name: str):
        self.number, self.name = number, name
        self.checks = 0
        self.failures = []
        self.nfail = 0

    def check(self, ok: bool, **detail):
        self.checks += 1
        if not ok:
            self.nfail += 1
            if len(self.failures) < MAX_LISTED:
                self.failures.append(detail)

    def report(self, **extra) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.nfail == 0,
                "checks": self.checks, "failed": self.nfail, "failures": self.failures, **extra}


# -- random exact objects ------------------------------------------------------

def random_map(X: VectorSpace, V: VectorSpace, rng, rank_cap: int | None = None) -> LinearMap:
    """Random map; with ``rank_cap`` it is a product through a space of that dimension."""
    f = X.field
    if rank_cap is None:
        return LinearMap(X, V, tuple(tuple(f.random(rng) for _ in range(X.dim))
                                     for _ in range(V.dim)))
    mid = VectorSpace(f, rank_cap)
    return random_map(mid, V, rng) @ random_map(X, mid, rng)


def random_invertible(X: VectorSpace, rng) -> LinearMap:
    while True:
        A = random_map(X, X, rng)
        if A.rank() == X.dim:
            return A


def random_independent(X: VectorSpace, k: int, rng) -> list:
    while True:
        vs = [X.random_vector(rng) for _ in range(k)]
        if rank([v.coords for v in vs], X.field, X.dim) == k:
            return vs


# -- criteria ------------------------------------------------------------------

def criterion_axioms(seed: int) -> dict:
    rng = random.Random(seed)
    t = _Tally(1, "axiom suite")
    for f in FIELDS:
        for m, n in itertools.product(range(1, 5), repeat=2):
            X, Y = VectorSpace(f, m), VectorSpace(f, n)
            probes = [BilinearMap.random(X, Y, VectorSpace(f, rng.randint(1, 3)), rng)
                      for _ in range(20)]
            for cls in (QuotientRealization, DualRealization):
                rep = check_axioms(cls(X, Y), probes)
                t.check(rep.passed and len(rep.probes) == 20, field=f.name, m=m, n=n,
                        realization=cls.name, failures=rep.failures[:2])
    return t.report()


def criterion_relations(seed: int, count: int = 500) -> dict:
    rng = random.Random(seed)
    t = _Tally(2, "relation soundness")
    for k in range(count):
        f = FIELDS[k % 2]
        family = RELATION_FAMILIES[k % 4]
        X = VectorSpace(f, rng.randint(1, 4))
        Y = VectorSpace(f, rng.randint(1, 4))
        g = random_relation(family, X, Y, rng)
        t.check(member_relation_span(g), index=k, family=family, field=f.name)
    return t.report()


def criterion_uniqueness(seed: int) -> dict:
    t = _Tally(3, "uniqueness")
    for f in FIELDS:
        for m, n in itertools.product(range(1, 5), repeat=2):
            X, Y = VectorSpace(f, m), VectorSpace(f, n)
            Rq, Rd = QuotientRealization(X, Y), DualRealization(X, Y)
            to_q = canonical_iso(Rq, Rd)
            to_d = canonical_iso(Rd, Rq)
            t.check(to_q @ to_d == LinearMap.identity(Rq.space)
                    and to_d @ to_q == LinearMap.identity(Rd.space),
                    field=f.name, m=m, n=n)
            t.check(all(to_q(Rd.tensor(x, y)) == Rq.tensor(x, y)
                        for x in X.basis() for y in Y.basis()),
                    field=f.name, m=m, n=n, check="carries theta")
    return t.report()


def criterion_basis(seed: int, count: int = 50) -> dict:
    rng = random.Random(seed)
    t = _Tally(4, "basis and dimension")
    for k in range(count):
        f = FIELDS[k % 2]
        X = VectorSpace(f, rng.randint(1, 4))
        Y = VectorSpace(f, rng.randint(1, 4))
        E = random_independent(X, rng.randint(1, X.dim), rng)
        D = random_independent(Y, rng.randint(1, Y.dim), rng)
        R = quotient_realization(X, Y)
        tensors = basis_tensors(R, E, D)
        r = rank([flatten(s.coeffs) for s in tensors], f, X.dim * Y.dim)
        t.check(r == len(E) * len(D), index=k, rank=r, expected=len(E) * len(D))
        t.check(R.space.dim == X.dim * Y.dim, index=k, check="dim")
    spaces = [VectorSpace(QQ, d) for d in (2, 3, 4)]
    R3 = iterated_product(spaces)
    t.check(R3.space.dim == 24, check="triple product", dim=R3.space.dim)
    re = rebracket(*spaces)
    t.check(re.rank() == 24, check="rebracket")
    return t.report(triple_dim=R3.space.dim)


def _prop37_draw(f, rng, t: _Tally, k: int):
    d = lambda: VectorSpace(f, rng.randint(1, 3))  # noqa: E731
    X, Y, V, W, X1, Y1 = d(), d(), d(), d(), d(), d()
    A, A1, A2 = (random_map(X, V, rng) for _ in range(3))
    B, B1, B2 = (random_map(Y, W, rng) for _ in range(3))
    C, D = random_map(X1, X, rng), random_map(Y1, Y, rng)
    a, b = f.random(rng), f.random(rng)
    tag = {"field": f.name, "draw": k}

    AB = kron(A, B)
    t.check(AB * (a * b) == kron(A * a, B * b) == kron(A * (a * b), B)
            == kron(A, B * (a * b)), identity="a", **tag)
    t.check(kron(A1 + A2, B1 + B2)
            == kron(A1, B1) + kron(A1, B2) + kron(A2, B1) + kron(A2, B2),
            identity="b", **tag)
    t.check(kron(A @ C, B @ D) == AB @ kron(C, D), identity="c", **tag)
    A0, B0 = random_invertible(X, rng), random_invertible(Y, rng)
    K = kron(A0, B0)
    t.check(K.rank() == K.domain.dim and K.inverse() == kron(A0.inverse(), B0.inverse()),
            identity="d", **tag)
    R_VW = quotient_realization(V, W)
    t.check(image_basis(AB) == regular_subspace(R_VW, image_basis(A), image_basis(B)),
            identity="e", **tag)
    R_XY = quotient_realization(X, Y)
    t.check(regular_subspace(R_XY, kernel_basis(A), kernel_basis(B)) <= kernel_basis(AB),
            identity="f-inclusion", **tag)
    t.check(shuffle_permutation(V, W) @ AB == kron(B, A) @ shuffle_permutation(X, Y),
            identity="g", **tag)
    t.check(adjoint(AB).matrix == kron(adjoint(A), adjoint(B)).matrix, identity="h", **tag)


def strictness_witness() -> dict:
    """A = diag(1, 0), B = I2: N(A) (x) N(B) is 0 but N(A (x) B) has dimension 2."""
    X = VectorSpace(QQ, 2)
    A = LinearMap.from_rows(X, X, ((1, 0), (0, 0)))
    B = LinearMap.identity(X)
    regular = regular_subspace(quotient_realization(X, X), kernel_basis(A), kernel_basis(B))
    full = kernel_basis(kron(A, B))
    return {"regular_dim": regular.dim, "kernel_dim": full.dim, "gap": full.dim - regular.dim,
            "formula": 4 - A.rank() * B.rank()}


def criterion_prop37(seed: int, count: int = 100) -> dict:
    rng = random.Random(seed)
    t = _Tally(5, "Kronecker identities")
    for f in FIELDS:
        for k in range(count):
            _prop37_draw(f, rng, t, k)
    w = strictness_witness()
    t.check(w["regular_dim"] == 0 and w["kernel_dim"] == 2 and w["gap"] == 2 == w["formula"],
            identity="f-strict", **w)
    return t.report(witness=w)


def criterion_quotient(seed: int, count: int = 100) -> dict:
    rng = random.Random(seed)
    t = _Tally(6, "quotient universal property")
    for k in range(count):
        f = FIELDS[k % 2]
        X = VectorSpace(f, rng.randint(1, 5))
        V = VectorSpace(f, rng.randint(1, 4))
        L = random_map(X, V, rng, rank_cap=rng.randint(0, min(X.dim, V.dim)))
        NL = kernel_basis(L)
        gens = [sum((b * f.random(rng) for b in NL.basis()), X.zero())
                for _ in range(rng.randint(0, NL.dim))]
        M = Subspace.span(X, gens)
        Q = quotient(X, M)
        Lh = factor_through_quotient(L, Q)
        t.check(Lh @ Q.projection == L, index=k, check="factor")
        t.check(kernel_basis(Lh).dim == NL.dim - M.dim, index=k, check="kernel dim")
        t.check(image_basis(Lh) == image_basis(L), index=k, check="range")
        t.check(Q.dim == X.dim - M.dim, index=k, check="quotient dim")
    return t.report()


# -- crossnorms ----------------------------------------------------------------

TOL = 1e-6


def _random_tensor(rng, px, py, max_dim=4):
    m, n = rng.integers(1, max_dim + 1, size=2)
    return RealTensor(rng.uniform(-1, 1, size=(m, n)), px, py)


def injective_oracle_22(C: np.ndarray, grid: int = 720) -> float:
    """max |f^T C g| over unit circles by dense sampling then local polishing."""
    from scipy.optimize import minimize

    ang = np.linspace(0, np.pi, grid, endpoint=False)
    U = np.stack([np.cos(ang), np.sin(ang)])
    vals = np.abs(U.T @ C @ U)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)

    def neg(z):
        f = np.array([np.cos(z[0]), np.sin(z[0])])
        g = np.array([np.cos(z[1]), np.sin(z[1])])
        return -abs(f @ C @ g)

    res = minimize(neg, [ang[i], ang[j]], method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14})
    return max(float(vals[i, j]), -float(res.fun))


def projective_oracle_11(C: np.ndarray) -> float:
    """min sum |c_k| |x_k|_1 |y_k|_1 over representations by at most four sign-direction atoms."""
    dirs = [np.array(v, dtype=float) for v in ((1, 0), (0, 1), (1, 1), (1, -1))]
    atoms = [(np.outer(x, y).ravel(), np.abs(x).sum() * np.abs(y).sum())
             for x in dirs for y in dirs]
    best = np.inf
    target = C.ravel()
    for combo in itertools.combinations(range(len(atoms)), 4):
        M = np.column_stack([atoms[c][0] for c in combo])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        coef = np.linalg.solve(M, target)
        best = min(best, float(sum(abs(c) * atoms[k][1] for c, k in zip(coef, combo))))
    return best


def criterion_crossnorm(seed: int, per_pair: int = 200, rank_one: int = 100,
                        oracle_draws: int = 20) -> dict:
    rng = np.random.default_rng(seed)
    t = _Tally(7, "crossnorm suite")
    pairs = list(itertools.product(TAGS, repeat=2))
    for px, py in pairs:
        tag = f"({tag_str(px)},{tag_str(py)})"
        for k in range(per_pair):
            T = _random_tensor(rng, px, py)
            inj, proj = injective_norm(T), projective_norm(T)
            scale = max(1.0, proj.hi)
            t.check(inj.hi <= proj.lo + TOL * scale, check="sandwich", tags=tag, index=k,
                    injective=inj.hi, projective=proj.lo)
            if (px, py) == (2, 2):
                h = hilbert_norm(T)
                t.check(inj.hi - TOL <= h <= proj.lo + TOL, check="hilbert", index=k)
            if (px, py) in ((1, 1), (INF, INF)):
                t.check(proj.hi - proj.lo <= TOL * scale, check="degenerate", tags=tag,
                        index=k, gap=proj.hi - proj.lo)
        for k in range(rank_one):
            m, n = rng.integers(1, 5, size=2)
            x, y = rng.uniform(-1, 1, m), rng.uniform(-1, 1, n)
            T = RealTensor(np.outer(x, y), px, py)
            want = float(lp_norm(x, px) * lp_norm(y, py))
            inj, proj = injective_norm(T), projective_norm(T)
            err = max(abs(v - want) for v in (inj.lo, inj.hi, proj.lo, proj.hi))
            t.check(err <= TOL * max(1.0, want), check="rank-one", tags=tag, index=k, err=err)
    for k in range(oracle_draws):
        C = rng.uniform(-1, 1, size=(2, 2))
        got = injective_norm(RealTensor(C, 2, 2)).hi
        t.check(abs(got - injective_oracle_22(C)) <= 1e-4, check="oracle (2,2) injective",
                index=k)
        got = projective_norm(RealTensor(C, 1, 1))
        want = projective_oracle_11(C)
        t.check(abs(got.lo - want) <= TOL and abs(got.hi - want) <= TOL,
                check="oracle (1,1) projective", index=k)
    for k in range(oracle_draws):
        C = rng.uniform(-1, 1, size=tuple(rng.integers(1, 5, size=2)))
        nuc = projective_norm(RealTensor(C, 2, 2))
        t.check(nuc.method == "closed-form"
                and abs(nuc.witness["certificate"] - nuc.hi) <= 1e-7 * max(1.0, nuc.hi),
                check="nuclear certificate", index=k)
        ent = projective_norm(RealTensor(C, 1, 1))
        t.check(ent.method == "closed-form" and ent.witness["gap"] == 0.0,
                check="entrywise certificate", index=k, gap=ent.witness["gap"])
    return t.report()


CRITERIA = (
    criterion_axioms,
    criterion_relations,
    criterion_uniqueness,
    criterion_basis,
    criterion_prop37,
    criterion_quotient,
    criterion_crossnorm,
)


def run_suite(seed: int = 0) -> dict:
    results = [fn(seed) for fn in CRITERIA]
    return {"seed": seed, "passed": all(r["passed"] for r in results), "criteria": results}
