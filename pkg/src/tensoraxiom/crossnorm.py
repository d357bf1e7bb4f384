"""Injective and projective norms on R^m (x) R^n with l1 / l2 / l-inf factors.

A tensor is an m x n real table C.  With factor norms l_px on R^m and
l_py on R^n:

* injective:  sup |f^T C g| over the dual unit balls (l_qx, l_qy);
* projective: inf sum |lambda_k| ||x_k|| ||y_k|| over representations.

The injective norm is always computed exactly (singular values or
extreme-point enumeration).  The projective norm has closed forms when
both tags are 2 (nuclear norm) or either tag is 1 (sum of row/column
norms).  The remaining pairs all have an l-inf factor; for them a convex
program over sign vectors gives a representation (upper bound) and a dual
bilinear form (lower bound), and both bounds are re-evaluated exactly
before being reported as a certified interval.
"""
from __future__ import annotations

import functools
import itertools
import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import EnumerationLimit, NormOverflow, ShapeMismatch, UnsupportedTag

INF = math.inf
TAGS = (1, 2, INF)
MAX_ENUM_DIM = 16
ENUM_TOL = 1e-9
SPECTRAL_TOL = 1e-7
CERT_TOL = 1e-6
_PROGRAM_MAX_DIM = 12


def normalize_tag(p) -> float:
    if isinstance(p, str):
        p = p.strip().lower()
        if p in ("inf", "infinity", "oo"):
            return INF
        try:
            p = float(p)
        except ValueError:
            raise UnsupportedTag(f"unsupported tag {p!r}") from None
    if p in (1, 2):
        return int(p)
    if p == INF:
        return INF
    raise UnsupportedTag(f"unsupported tag {p!r}; use 1, 2 or inf")


def dual_tag(p):
    return {1: INF, 2: 2, INF: 1}[normalize_tag(p)]


def tag_str(p) -> str:
    p = normalize_tag(p)
    return "inf" if p == INF else str(p)


@dataclass(frozen=True)
class NormedFactor:
    dim: int
    p: float = 2

    def __post_init__(self):
        object.__setattr__(self, "p", normalize_tag(self.p))

    @property
    def q(self):
        return dual_tag(self.p)

    def norm(self, x) -> float:
        return lp_norm(np.asarray(x, dtype=float), self.p)


@dataclass(frozen=True, eq=False)
class RealTensor:
    coeffs: np.ndarray
    px: float = 2
    py: float = 2

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim == 1:
            c = c.reshape(-1, 1)
        if c.ndim != 2 or 0 in c.shape:
            raise ShapeMismatch(f"expected a nonempty 2-D table, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise NormOverflow("tensor has non-finite entries")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "px", normalize_tag(self.px))
        object.__setattr__(self, "py", normalize_tag(self.py))

    @classmethod
    def outer(cls, x, y, px=2, py=2) -> RealTensor:
        return cls(np.outer(np.asarray(x, float), np.asarray(y, float)), px, py)

    @property
    def shape(self):
        return self.coeffs.shape

    def with_tags(self, px, py) -> RealTensor:
        return RealTensor(self.coeffs, px, py)

    def scaled(self, alpha: float) -> RealTensor:
        return RealTensor(alpha * self.coeffs, self.px, self.py)

    def __add__(self, other):
        if not isinstance(other, RealTensor):
            return NotImplemented
        if other.shape != self.shape or (other.px, other.py) != (self.px, self.py):
            raise ShapeMismatch("tensors of different shape or tags")
        return RealTensor(self.coeffs + other.coeffs, self.px, self.py)


@dataclass(frozen=True)
class NormResult:
    lo: float
    hi: float
    method: str
    tol: float
    witness: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise NormOverflow("norm computation overflowed")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def value(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def to_dict(self) -> dict:
        return {"lo": float(self.lo), "hi": float(self.hi), "method": self.method,
                "tol": self.tol}


# -- helpers -------------------------------------------------------------------

def lp_norm(x: np.ndarray, p, axis=-1):
    return np.linalg.norm(x, ord=p, axis=axis)


def norming_functional(w: np.ndarray, p) -> np.ndarray:
    """g with ||g||_q <= 1 and g . w = ||w||_p."""
    w = np.asarray(w, dtype=float)
    if p == 1:
        return np.sign(w)
    if p == 2:
        nrm = np.linalg.norm(w)
        return w / nrm if nrm > 0 else np.zeros_like(w)
    g = np.zeros_like(w)
    k = int(np.argmax(np.abs(w)))
    g[k] = 1.0 if w[k] >= 0 else -1.0
    return g


def sign_vectors(m: int) -> np.ndarray:
    """All of {+1,-1}^m with first coordinate +1 (one per +/- pair)."""
    if m > MAX_ENUM_DIM:
        raise EnumerationLimit(f"sign-vector enumeration capped at dimension {MAX_ENUM_DIM}, got {m}")
    if m == 0:
        return np.ones((1, 0))
    rest = np.array(list(itertools.product((1.0, -1.0), repeat=m - 1)), dtype=float)
    rest = rest.reshape(2 ** (m - 1), m - 1)
    return np.hstack([np.ones((rest.shape[0], 1)), rest])


def _injective(C: np.ndarray, px, py):
    """Return (value, f, g, method, tol) with f^T C g = value, f, g in the dual unit balls."""
    m, n = C.shape
    qx, qy = dual_tag(px), dual_tag(py)
    if px == 2 and py == 2:
        u, s, vh = np.linalg.svd(C)
        return float(s[0]), u[:, 0], vh[0], "spectral", SPECTRAL_TOL
    if qx == 1:
        # extreme points of the l1 ball are +/- e_i
        norms = lp_norm(C, py, axis=1)
        i = int(np.argmax(norms))
        f = np.zeros(m)
        f[i] = 1.0
        return float(norms[i]), f, norming_functional(C[i], py), "enumeration", ENUM_TOL
    if qy == 1:
        norms = lp_norm(C, px, axis=0)
        j = int(np.argmax(norms))
        g = np.zeros(n)
        g[j] = 1.0
        return float(norms[j]), norming_functional(C[:, j], px), g, "enumeration", ENUM_TOL
    if qx == INF and (qy != INF or m <= n):
        S = sign_vectors(m)
        W = S @ C
        norms = lp_norm(W, py, axis=1)
        k = int(np.argmax(norms))
        return float(norms[k]), S[k], norming_functional(W[k], py), "enumeration", ENUM_TOL
    S = sign_vectors(n)
    W = S @ C.T
    norms = lp_norm(W, px, axis=1)
    k = int(np.argmax(norms))
    return float(norms[k]), norming_functional(W[k], px), S[k], "enumeration", ENUM_TOL


def bilinear_form_norm(Phi: np.ndarray, px, py) -> float:
    """sup |x^T Phi y| over the l_px and l_py unit balls (dual norm of the projective norm)."""
    return _injective(np.asarray(Phi, float), dual_tag(px), dual_tag(py))[0]


def _check_tags(T: RealTensor):
    if T.px not in TAGS or T.py not in TAGS:
        raise UnsupportedTag(f"tags ({T.px}, {T.py}) not supported")


# -- norms ---------------------------------------------------------------------

def injective_norm(T: RealTensor) -> NormResult:
    _check_tags(T)
    value, f, g, method, tol = _injective(T.coeffs, T.px, T.py)
    if not math.isfinite(value):
        raise NormOverflow("injective norm overflowed")
    return NormResult(value, value, method, tol, {"f": f, "g": g})


def _duality_bound(C: np.ndarray, Phi: np.ndarray, px, py) -> float:
    nrm = bilinear_form_norm(Phi, px, py)
    if nrm <= 0:
        return 0.0
    # row sums first, matching the summation order of the row-norm closed form
    return abs(float(np.sum(np.sum(Phi * C, axis=1)))) / nrm


def _representation_costs(C: np.ndarray, px, py) -> dict:
    u, s, vh = np.linalg.svd(C, full_matrices=False)
    return {
        "basis-pairs": float(np.sum(np.abs(C))),
        "rows": float(np.sum(lp_norm(C, py, axis=1))),
        "columns": float(np.sum(lp_norm(C, px, axis=0))),
        "singular-vectors": float(np.sum(s * lp_norm(u.T, px, axis=1) * lp_norm(vh, py, axis=1))),
    }


class _ExtremePointProgram:
    """min sum_t ||x_t||_p  subject to  sum_t x_t t^T = C, t over sign vectors.

    The l-inf unit ball is the convex hull of sign vectors, so with an
    l-inf factor on the right every representation can be rewritten over
    sign vectors at no extra cost, and this convex program is the
    projective norm.  One parameterized problem is cached per shape.
    """

    def __init__(self, m: int, n: int, p):
        import cvxpy as cp

        self.signs = sign_vectors(n)
        self.C = cp.Parameter((m, n))
        self.X = cp.Variable((m, self.signs.shape[0]))
        self.constraint = self.X @ self.signs == self.C
        self.problem = cp.Problem(cp.Minimize(cp.sum(cp.norm(self.X, p, axis=0))),
                                  [self.constraint])
        self.p = p
        self.lock = threading.Lock()

    def solve(self, C: np.ndarray):
        import cvxpy as cp

        with self.lock:
            self.C.value = C
            try:
                self.problem.solve(solver="CLARABEL")
            except cp.error.SolverError:
                return None
            if self.problem.status not in ("optimal", "optimal_inaccurate"):
                return None
            X = np.array(self.X.value)
            Phi = np.array(self.constraint.dual_value)
        residual = C - X @ self.signs
        # an inexact representation still bounds the norm once the residual's own cost is added
        upper = float(np.sum(lp_norm(X.T, self.p, axis=1)) + np.sum(np.abs(residual)))
        return upper, Phi


@functools.lru_cache(maxsize=64)
def _program(m: int, n: int, p) -> _ExtremePointProgram | None:
    if n > _PROGRAM_MAX_DIM:
        return None
    return _ExtremePointProgram(m, n, p)


def _extreme_point_bound(C: np.ndarray, px, py):
    """(upper, dual matrix) from the program, enumerating the smaller l-inf side."""
    m, n = C.shape
    if py == INF and (px != INF or n <= m):
        prog = _program(m, n, px)
        out = prog.solve(C) if prog else None
        return out
    if px == INF:
        prog = _program(n, m, py)
        out = prog.solve(C.T) if prog else None
        return None if out is None else (out[0], out[1].T)
    return None


def projective_norm(T: RealTensor, samples: int = 32, seed: int = 0) -> NormResult:
    _check_tags(T)
    C = T.coeffs
    px, py = T.px, T.py
    if not np.any(C):
        return NormResult(0.0, 0.0, "closed-form", ENUM_TOL)

    if px == 2 and py == 2:
        u, s, vh = np.linalg.svd(C, full_matrices=False)
        value = float(np.sum(s))
        cert = _duality_bound(C, u @ vh, 2, 2)
        return _closed_form(value, cert, SPECTRAL_TOL, "nuclear")

    if px == 1 or py == 1:
        if px == 1:
            value = float(np.sum(lp_norm(C, py, axis=1)))
            Phi = np.vstack([norming_functional(row, py) for row in C])
        else:
            value = float(np.sum(lp_norm(C, px, axis=0)))
            Phi = np.column_stack([norming_functional(col, px) for col in C.T])
        cert = _duality_bound(C, Phi, px, py)
        return _closed_form(value, cert, ENUM_TOL, "rows" if px == 1 else "columns")

    costs = _representation_costs(C, px, py)
    upper = min(costs.values())
    _, f, g, _, _ = _injective(C, px, py)
    u, s, vh = np.linalg.svd(C, full_matrices=False)
    candidates = [np.outer(f, g), np.sign(C), C, u @ vh,
                  np.vstack([norming_functional(r, py) for r in C]),
                  np.column_stack([norming_functional(c, px) for c in C.T])]
    method = "bound"
    program = _extreme_point_bound(C, px, py)
    if program is not None:
        upper = min(upper, program[0])
        candidates.append(program[1])
    rng = np.random.default_rng(seed)
    candidates.extend(rng.standard_normal((samples,) + C.shape))
    lower = max(_duality_bound(C, Phi, px, py) for Phi in candidates)
    lower = min(lower, upper)
    if upper - lower <= CERT_TOL * max(1.0, upper):
        method = "enumeration"
    return NormResult(lower, upper, method, CERT_TOL, {"costs": costs})


def _closed_form(value: float, certificate: float, tol: float, kind: str) -> NormResult:
    gap = abs(value - certificate)
    if gap <= tol * max(1.0, value):
        return NormResult(value, value, "closed-form", tol,
                          {"kind": kind, "certificate": certificate, "gap": gap})
    return NormResult(min(value, certificate), max(value, certificate), "bound", tol,
                      {"kind": kind, "certificate": certificate, "gap": gap})


def hilbert_inner(T1: RealTensor, T2: RealTensor) -> float:
    """Frobenius pairing; on single tensors <x1, x2> <y1, y2>."""
    for T in (T1, T2):
        if (T.px, T.py) != (2, 2):
            raise UnsupportedTag("the Hilbert inner product needs tags (2, 2)")
    if T1.shape != T2.shape:
        raise ShapeMismatch("tensors of different shape")
    return float(np.sum(T1.coeffs * T2.coeffs))


def hilbert_norm(T: RealTensor) -> float:
    return math.sqrt(max(hilbert_inner(T, T), 0.0))


# -- certification -------------------------------------------------------------

@dataclass
class CertifyReport:
    px: float
    py: float
    passed: bool = True
    checks: list = field(default_factory=list)

    def record(self, name: str, ok: bool, **details):
        self.checks.append({"check": name, "ok": bool(ok), **details})
        if not ok:
            self.passed = False

    def to_dict(self) -> dict:
        return {"px": tag_str(self.px), "py": tag_str(self.py), "passed": self.passed,
                "checks": self.checks}


def _rank_one_factors(C: np.ndarray):
    u, s, vh = np.linalg.svd(C)
    if s[0] == 0 or (len(s) > 1 and s[1] > 1e-12 * s[0]):
        return None
    return u[:, 0] * s[0], vh[0]


def crossnorm_certify(T: RealTensor, tol: float = CERT_TOL) -> CertifyReport:
    """Check the reasonable-crossnorm facts the solvers must respect on ``T``."""
    report = CertifyReport(T.px, T.py)
    inj = injective_norm(T)
    proj = projective_norm(T)
    scale = max(1.0, proj.hi)
    report.record("sandwich", inj.hi <= proj.hi + tol * scale,
                  injective=inj.hi, projective=[proj.lo, proj.hi])
    report.record("interval", proj.lo <= proj.hi and inj.hi <= proj.lo + tol * scale,
                  lo=proj.lo, hi=proj.hi)
    if (T.px, T.py) == (2, 2):
        h = hilbert_norm(T)
        report.record("hilbert", inj.hi - tol * scale <= h <= proj.hi + tol * scale, hilbert=h)
    factors = _rank_one_factors(T.coeffs)
    if factors is not None:
        x, y = factors
        expected = float(lp_norm(x, T.px) * lp_norm(y, T.py))
        ok = all(abs(v - expected) <= tol * max(1.0, expected)
                 for v in (inj.lo, inj.hi, proj.lo, proj.hi))
        report.record("rank-one", ok, expected=expected)
    for alpha in (-2.0, 0.5, 3.0):
        S = T.scaled(alpha)
        for name, fn, base in (("injective", injective_norm, inj), ("projective", projective_norm, proj)):
            r = fn(S)
            want = abs(alpha) * base.hi
            ok = abs(r.hi - want) <= tol * max(1.0, want) and r.lo <= want + tol * max(1.0, want)
            report.record(f"homogeneity-{name}", ok, alpha=alpha, value=r.hi, expected=want)
    return report
