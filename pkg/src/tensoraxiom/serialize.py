"""JSON encodings for every kernel value.

Scalars are strings ("5/6", "-3" over Q, "4" over GF(p)) so no value is
ever coerced through a float.  Each ``dump_*`` has a matching ``load_*``
and ``load(dump(v)) == v`` for all values.
"""
from __future__ import annotations

import json
import math

from .bilinear import BilinearMap
from .crossnorm import RealTensor, tag_str
from .errors import ParseError, ShapeMismatch, UnsupportedTag
from .exact.fields import QQ, Field, parse_field
from .exact.free import CarrierKey, FreeVector
from .exact.linalg import LinearMap, Subspace, Vector, VectorSpace
from .tensor import TensorElement, TensorRealization


def _require(doc, *keys):
    if not isinstance(doc, dict):
        raise ParseError(f"expected a JSON object, got {type(doc).__name__}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")


def _dim(value, name) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError(f"{name} must be a non-negative integer")
    return value


def load_field(doc) -> Field:
    if isinstance(doc, dict):
        doc = doc.get("field", "Q")
    if not isinstance(doc, str):
        raise ParseError("field must be a string like 'Q' or 'GF(7)'")
    return parse_field(doc)


def dump_scalar(x) -> str:
    return str(x)


def load_scalar(text, field: Field):
    return field.parse(text)


def _load_row(row, field, width=None):
    if not isinstance(row, list):
        raise ParseError("matrix rows must be JSON arrays")
    if width is not None and len(row) != width:
        raise ParseError(f"row has {len(row)} entries, expected {width}")
    return tuple(load_scalar(v, field) for v in row)


def _load_matrix(rows, field, width=None):
    if not isinstance(rows, list):
        raise ParseError("matrix must be a JSON array of rows")
    out = tuple(_load_row(r, field, width) for r in rows)
    if len({len(r) for r in out}) > 1:
        raise ParseError("ragged matrix")
    return out


def _dump_matrix(rows):
    return [[dump_scalar(x) for x in row] for row in rows]


# -- spaces, vectors, maps, subspaces ------------------------------------------

def dump_space(X: VectorSpace) -> dict:
    return {"field": X.field.name, "dim": X.dim}


def load_space(doc) -> VectorSpace:
    _require(doc, "dim")
    return VectorSpace(load_field(doc), _dim(doc["dim"], "dim"))


def dump_vector(v: Vector) -> dict:
    return {"field": v.space.field.name, "dim": v.space.dim,
            "coords": [dump_scalar(c) for c in v.coords]}


def load_vector(doc) -> Vector:
    _require(doc, "coords")
    f = load_field(doc)
    coords = _load_row(doc["coords"], f)
    dim = _dim(doc.get("dim", len(coords)), "dim")
    return VectorSpace(f, dim).vector(coords) if len(coords) == dim else _bad_len()


def _bad_len():
    raise ParseError("coordinate count does not match dim")


def dump_map(L: LinearMap) -> dict:
    return {"field": L.field.name, "dim": L.domain.dim, "matrix": _dump_matrix(L.matrix)}


def load_map(doc) -> LinearMap:
    _require(doc, "matrix")
    f = load_field(doc)
    rows = _load_matrix(doc["matrix"], f)
    if "dim" in doc:
        dim = _dim(doc["dim"], "dim")
    elif rows:
        dim = len(rows[0])
    else:
        raise ParseError("a map with no rows needs an explicit 'dim'")
    if rows and len(rows[0]) != dim:
        raise ParseError(f"matrix has {len(rows[0])} columns but dim is {dim}")
    return LinearMap(VectorSpace(f, dim), VectorSpace(f, len(rows)), rows)


def dump_subspace(S: Subspace) -> dict:
    return {"field": S.field.name, "dim": S.ambient.dim, "matrix": _dump_matrix(S.rows)}


def load_subspace(doc) -> Subspace:
    _require(doc, "dim", "matrix")
    f = load_field(doc)
    dim = _dim(doc["dim"], "dim")
    return Subspace.span(VectorSpace(f, dim), _load_matrix(doc["matrix"], f, dim))


# -- bilinear maps and tensors -------------------------------------------------

def dump_bilinear(phi: BilinearMap) -> dict:
    return {"field": phi.field.name, "Z_dim": phi.Z.dim, "X_dim": phi.X.dim,
            "Y_dim": phi.Y.dim,
            "coeffs": [_dump_matrix(s) for s in phi.coeffs]}


def load_bilinear(doc) -> BilinearMap:
    _require(doc, "Z_dim", "X_dim", "Y_dim", "coeffs")
    f = load_field(doc)
    k, m, n = (_dim(doc[key], key) for key in ("Z_dim", "X_dim", "Y_dim"))
    coeffs = doc["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) != k:
        raise ParseError(f"coeffs must hold {k} slices")
    slices = []
    for s in coeffs:
        rows = _load_matrix(s, f, n)
        if len(rows) != m:
            raise ParseError(f"each slice must have {m} rows")
        slices.append(rows)
    return BilinearMap(VectorSpace(f, m), VectorSpace(f, n), VectorSpace(f, k), tuple(slices))


def dump_tensor_element(t: TensorElement) -> dict:
    R = t.realization
    doc = {"field": R.field.name, "X_dim": R.X.dim, "Y_dim": R.Y.dim,
           "coeffs": _dump_matrix(t.coeffs)}
    if t.rep is not None:
        doc["rep"] = [[[dump_scalar(c) for c in x.coords], [dump_scalar(c) for c in y.coords]]
                      for x, y in t.rep]
    return doc


def load_tensor_element(doc, realization: TensorRealization | None = None) -> TensorElement:
    _require(doc, "X_dim", "Y_dim", "coeffs")
    f = load_field(doc)
    m, n = _dim(doc["X_dim"], "X_dim"), _dim(doc["Y_dim"], "Y_dim")
    if realization is None:
        from .realizations import quotient_realization
        realization = quotient_realization(VectorSpace(f, m), VectorSpace(f, n))
    R = realization
    table = _load_matrix(doc["coeffs"], f, n)
    if len(table) != m:
        raise ParseError(f"coeffs must have {m} rows")
    rep = None
    if doc.get("rep") is not None:
        rep = tuple((R.X.vector(_load_row(x, f, m)), R.Y.vector(_load_row(y, f, n)))
                    for x, y in doc["rep"])
    try:
        return TensorElement(R, table, rep)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def dump_free_vector(fv: FreeVector) -> dict:
    terms = [{"x": [dump_scalar(c) for c in x.coords],
              "y": [dump_scalar(c) for c in y.coords],
              "coeff": dump_scalar(coeff)} for coeff, x, y in fv.pairs()]
    return {"field": fv.field.name, "X_dim": fv.X.dim, "Y_dim": fv.Y.dim, "terms": terms}


def load_free_vector(doc, field: Field | None = None) -> FreeVector:
    """Accepts the wrapped form or a bare list of {"x", "y", "coeff"} terms."""
    if isinstance(doc, list):
        terms, f = doc, field or QQ
        if not terms:
            raise ParseError("a bare empty term list does not fix the factor spaces")
        m, n = len(terms[0].get("x", [])), len(terms[0].get("y", []))
    else:
        _require(doc, "terms")
        terms, f = doc["terms"], field or load_field(doc)
        if not isinstance(terms, list):
            raise ParseError("terms must be a list")
        if "X_dim" in doc and "Y_dim" in doc:
            m, n = _dim(doc["X_dim"], "X_dim"), _dim(doc["Y_dim"], "Y_dim")
        elif terms:
            m, n = len(terms[0].get("x", [])), len(terms[0].get("y", []))
        else:
            raise ParseError("empty free vector needs X_dim and Y_dim")
    X, Y = VectorSpace(f, m), VectorSpace(f, n)
    acc = {}
    for term in terms:
        _require(term, "x", "y")
        x = X.vector(_load_row(term["x"], f, m))
        y = Y.vector(_load_row(term["y"], f, n))
        key = CarrierKey.of(x, y)
        acc[key] = acc.get(key, f.zero) + load_scalar(term.get("coeff", "1"), f)
    return FreeVector(X, Y, acc)


# -- real tensors --------------------------------------------------------------

def _load_tag(v):
    if isinstance(v, str) or isinstance(v, (int, float)):
        return v
    raise ParseError(f"bad norm tag {v!r}")


def dump_real_tensor(T: RealTensor) -> dict:
    return {"coeffs": T.coeffs.tolist(), "px": tag_str(T.px), "py": tag_str(T.py)}


def load_real_tensor(doc) -> RealTensor:
    _require(doc, "coeffs")
    coeffs = doc["coeffs"]
    if not isinstance(coeffs, list) or not all(isinstance(r, list) for r in coeffs):
        raise ParseError("coeffs must be a 2-D array")
    try:
        rows = [[float(v) for v in r] for r in coeffs]
    except (TypeError, ValueError):
        raise ParseError("coeffs must be numbers") from None
    if any(not math.isfinite(v) for r in rows for v in r):
        raise ParseError("coeffs must be finite")
    try:
        return RealTensor(rows, _load_tag(doc.get("px", 2)), _load_tag(doc.get("py", 2)))
    except (ShapeMismatch, UnsupportedTag, ValueError) as exc:
        raise ParseError(str(exc)) from None


def dumps(doc) -> str:
    """Canonical JSON text used for every report (sorted keys, fixed layout)."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
