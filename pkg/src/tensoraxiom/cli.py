"""Command-line front end: JSON in, sorted-key JSON out.

Exit status is 0 on success, 1 when a check fails or the kernel raises a
typed error, and 2 when the input cannot be parsed.
"""
from __future__ import annotations

import argparse
import os
import random
import sys

from . import serialize as io
from .bilinear import BilinearMap
from .crossnorm import RealTensor, crossnorm_certify, hilbert_norm, injective_norm, projective_norm
from .errors import ParseError, TensorAxiomError
from .exact.fields import parse_field
from .exact.linalg import VectorSpace
from .kron import adjoint, kron, shuffle_permutation
from .realizations import (
    DualRealization,
    QuotientRealization,
    member_relation_span,
    normal_form,
)
from .suite import run_suite
from .tensor import TensorElement, canonical_iso, check_axioms

REALIZATIONS = {"quotient": QuotientRealization, "dual": DualRealization}


class CheckFailed(Exception):
    def __init__(self, report):
        self.report = report


def default_seed() -> int:
    text = os.environ.get("TENSORAXIOM_SEED", "0")
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"TENSORAXIOM_SEED must be an integer, got {text!r}") from None


def _read(path: str):
    try:
        if path == "-":
            return io.loads(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _factor_spaces(doc):
    io._require(doc, "X_dim", "Y_dim")
    f = io.load_field(doc)
    return (VectorSpace(f, io._dim(doc["X_dim"], "X_dim")),
            VectorSpace(f, io._dim(doc["Y_dim"], "Y_dim")))


# -- verbs ---------------------------------------------------------------------

def cmd_check_axioms(args):
    doc = _read(args.input)
    X, Y = _factor_spaces(doc)
    which = doc.get("realization", args.realization)
    names = list(REALIZATIONS) if which == "both" else [which]
    if any(n not in REALIZATIONS for n in names):
        raise ParseError(f"unknown realization {which!r}")
    if "probes" in doc:
        probes = [io.load_bilinear(p) for p in doc["probes"]]
    else:
        rng = random.Random(args.seed)
        count = io._dim(doc.get("random_probes", 20), "random_probes")
        probes = [BilinearMap.random(X, Y, VectorSpace(X.field, rng.randint(1, 3)), rng)
                  for _ in range(count)]
    reports = [check_axioms(REALIZATIONS[n](X, Y), probes).to_dict() for n in names]
    out = {"passed": all(r["passed"] for r in reports), "reports": reports}
    if not out["passed"]:
        raise CheckFailed(out)
    return out


def cmd_factorize(args):
    phi = io.load_bilinear(_read(args.input))
    R = REALIZATIONS[args.realization](phi.X, phi.Y)
    return {"realization": args.realization, "map": io.dump_map(R.factorize(phi))}


def cmd_iso(args):
    X, Y = _factor_spaces(_read(args.input))
    target = REALIZATIONS[args.target](X, Y)
    source = REALIZATIONS[args.source](X, Y)
    return {"source": args.source, "target": args.target,
            "map": io.dump_map(canonical_iso(target, source))}


def cmd_normal_form(args):
    fv = io.load_free_vector(_read(args.input))
    R = QuotientRealization(fv.X, fv.Y)
    return io.dump_tensor_element(TensorElement(R, normal_form(fv)))


def cmd_member(args):
    return {"member": member_relation_span(io.load_free_vector(_read(args.input)))}


def cmd_kron(args):
    A, B = io.load_map(_read(args.left)), io.load_map(_read(args.right))
    return io.dump_map(kron(A, B))


def cmd_adjoint(args):
    return io.dump_map(adjoint(io.load_map(_read(args.input))))


def cmd_shuffle(args):
    return io.dump_map(shuffle_permutation(args.m, args.n, parse_field(args.field)))


def _tensor_with_flags(args) -> RealTensor:
    doc = _read(args.input)
    if isinstance(doc, dict):
        doc = dict(doc)
        if args.px is not None:
            doc["px"] = args.px
        if args.py is not None:
            doc["py"] = args.py
    return io.load_real_tensor(doc)


def cmd_norm(args):
    T = _tensor_with_flags(args)
    if args.kind == "hilbert":
        h = hilbert_norm(T)
        return {"lo": h, "hi": h, "method": "closed-form"}
    r = injective_norm(T) if args.kind == "injective" else projective_norm(T)
    return {"lo": float(r.lo), "hi": float(r.hi), "method": r.method}


def cmd_certify(args):
    out = crossnorm_certify(_tensor_with_flags(args)).to_dict()
    if not out["passed"]:
        raise CheckFailed(out)
    return out


def cmd_suite(args):
    out = run_suite(args.seed)
    if not out["passed"]:
        raise CheckFailed(out)
    return out


def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS,
                        help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized checks (default: $TENSORAXIOM_SEED or 0)")
    p = argparse.ArgumentParser(prog="tensoraxiom", description=__doc__.splitlines()[0],
                                parents=[common])
    p.set_defaults(output=None, seed=None)
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help_, inputs=("input",)):
        s = sub.add_parser(name, help=help_, parents=[common])
        for arg in inputs:
            s.add_argument(arg, help="JSON file, or - for stdin")
        s.set_defaults(fn=fn)
        return s

    s = verb("check-axioms", cmd_check_axioms, "check the span and factorization axioms")
    s.add_argument("--realization", choices=["quotient", "dual", "both"], default="both")
    s = verb("factorize", cmd_factorize, "linear map through theta for a bilinear map")
    s.add_argument("--realization", choices=list(REALIZATIONS), default="quotient")
    s = verb("iso", cmd_iso, "canonical isomorphism between realizations")
    s.add_argument("--source", choices=list(REALIZATIONS), default="dual")
    s.add_argument("--target", choices=list(REALIZATIONS), default="quotient")
    verb("normal-form", cmd_normal_form, "coefficient table of a free vector modulo M")
    verb("member-M", cmd_member, "decide membership in the relation span M")
    verb("kron", cmd_kron, "Kronecker product of two maps", inputs=("left", "right"))
    verb("adjoint", cmd_adjoint, "algebraic adjoint (transpose) of a map")
    s = verb("shuffle", cmd_shuffle, "permutation X (x) Y -> Y (x) X", inputs=())
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--field", default="Q")
    for name, fn, help_ in (("norm", cmd_norm, "injective, projective or Hilbert norm"),
                            ("certify", cmd_certify, "crossnorm consistency checks")):
        s = verb(name, fn, help_)
        s.add_argument("--px", default=None)
        s.add_argument("--py", default=None)
        if name == "norm":
            s.add_argument("--kind", choices=["injective", "projective", "hilbert"],
                           default="projective")
    verb("suite", cmd_suite, "run the seeded acceptance suite", inputs=())
    return p


def _emit(doc, path):
    text = io.dumps(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        if args.verb == "shuffle" and (args.m < 0 or args.n < 0):
            raise ParseError("dimensions must be non-negative")
        out, status = args.fn(args), 0
    except ParseError as exc:
        out, status = {"error": {"type": "ParseError", "message": str(exc)}}, 2
    except CheckFailed as exc:
        out, status = exc.report, 1
    except TensorAxiomError as exc:
        out, status = {"error": {"type": type(exc).__name__, "message": str(exc)}}, 1
    _emit(out, args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
