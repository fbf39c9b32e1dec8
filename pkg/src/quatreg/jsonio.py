"""JSON encodings of quaternions, polynomials, quotients, matrices and zero sets.

Quaternions are ``[w, x, y, z]`` arrays; Python's float repr is the shortest
decimal that round-trips, so encoding is bit-exact.
"""

from __future__ import annotations

import json
import math

from .errors import ParseError
from .fractional import (AffineClass, AffineForm, MatrixH, PoleForm, RealPole,
                         SpherePole)
from .quaternion import INF, Infinity, Quaternion, SliceSphere
from .quotient import RegularRational, SingularComponent
from .series import RegularPolynomial
from .zeros import IsolatedZero, SphericalZero, ZeroSet

__all__ = ["to_jsonable", "from_jsonable", "parse_quaternion", "parse_polynomial",
           "parse_quotient", "parse_matrix", "parse_zero_set", "parse_singular_component", "parse_document", "dumps", "loads"]


def _num(v: float) -> float:
    # fold -0.0 into 0.0
    return v + 0.0


def _quat(q: Quaternion) -> list[float]:
    return [_num(q.w), _num(q.x), _num(q.y), _num(q.z)]


def to_jsonable(obj):
    """Plain JSON structure for any package value."""
    if isinstance(obj, Infinity):
        return "inf"
    if isinstance(obj, Quaternion):
        return _quat(obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (dict, str, bool, int)) or obj is None:
        return obj
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, RegularPolynomial):
        return {"coeffs": [_quat(c) for c in obj.coeffs]}
    if isinstance(obj, RegularRational):
        return {"den": to_jsonable(obj.den), "num": to_jsonable(obj.num)}
    if isinstance(obj, MatrixH):
        return {"a": _quat(obj.a), "c": _quat(obj.c), "b": _quat(obj.b), "d": _quat(obj.d)}
    if isinstance(obj, SliceSphere):
        return {"x": _num(obj.x), "y": _num(obj.y)}
    if isinstance(obj, ZeroSet):
        return {
            "isolated": [{"point": _quat(z.point), "mult": z.multiplicity, "flagged": z.flagged}
                         for z in obj.isolated],
            "spheres": [{"x": _num(s.sphere.x), "y": _num(s.sphere.y), "mult": s.multiplicity}
                        for s in obj.spherical],
        }
    if isinstance(obj, AffineForm):
        return {"kind": "affine", "a": _quat(obj.a), "b": _quat(obj.b)}
    if isinstance(obj, PoleForm):
        return {"kind": "pole", "a": _quat(obj.a), "b": _quat(obj.b), "p": _quat(obj.p)}
    if isinstance(obj, AffineClass):
        return {"kind": "affine"}
    if isinstance(obj, RealPole):
        return {"kind": "real_pole", "x": _num(obj.x)}
    if isinstance(obj, SpherePole):
        return {"kind": "sphere_pole", "x": _num(obj.sphere.x), "y": _num(obj.sphere.y)}
    if isinstance(obj, SingularComponent):
        loc = obj.location
        out = {"x": _num(loc.x), "y": _num(loc.y)} if obj.is_sphere else {"x": _num(loc), "y": 0.0}
        out.update(mult=obj.multiplicity, pole_order=obj.pole_order,
                   removable_candidate=obj.removable_candidate)
        return out
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


def parse_quaternion(doc) -> Quaternion:
    if not isinstance(doc, (list, tuple)) or len(doc) != 4:
        raise ParseError(f"quaternion must be a 4-element array, got {doc!r}")
    try:
        vals = [float(v) for v in doc]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric quaternion component in {doc!r}") from exc
    if isinstance(doc[0], bool) or not all(math.isfinite(v) for v in vals):
        raise ParseError(f"invalid quaternion {doc!r}")
    return Quaternion(*vals)


def parse_extended(doc):
    if doc == "inf":
        return INF
    return parse_quaternion(doc)


def _require(doc, keys):
    if not isinstance(doc, dict) or not all(k in doc for k in keys):
        raise ParseError(f"expected an object with keys {sorted(keys)}")


def parse_polynomial(doc) -> RegularPolynomial:
    _require(doc, ("coeffs",))
    if not isinstance(doc["coeffs"], list):
        raise ParseError("coeffs must be an array")
    return RegularPolynomial([parse_quaternion(c) for c in doc["coeffs"]])


def parse_quotient(doc) -> RegularRational:
    _require(doc, ("den", "num"))
    den = parse_polynomial(doc["den"])
    if den.is_zero():
        raise ParseError("quotient denominator is the zero polynomial")
    return RegularRational(den, parse_polynomial(doc["num"]))


def parse_matrix(doc) -> MatrixH:
    _require(doc, ("a", "b", "c", "d"))
    return MatrixH(parse_quaternion(doc["a"]), parse_quaternion(doc["c"]),
                   parse_quaternion(doc["b"]), parse_quaternion(doc["d"]))


def parse_zero_set(doc) -> ZeroSet:
    _require(doc, ("isolated", "spheres"))
    try:
        iso = tuple(IsolatedZero(parse_quaternion(z["point"]), int(z["mult"]),
                                 bool(z.get("flagged", False))) for z in doc["isolated"])
        sph = tuple(SphericalZero(SliceSphere(float(s["x"]), float(s["y"])), int(s["mult"]))
                    for s in doc["spheres"])
    except (KeyError, TypeError) as exc:
        raise ParseError("malformed zero set") from exc
    return ZeroSet(iso, sph)


def _parse_float(doc, key) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ParseError(f"{key} must be a finite number")
    return float(v)


def _parse_sphere(doc) -> SliceSphere:
    _require(doc, ("x", "y"))
    return SliceSphere(_parse_float(doc, "x"), _parse_float(doc, "y"))


def parse_singular_component(doc) -> SingularComponent:
    _require(doc, ("x", "y", "mult", "pole_order", "removable_candidate"))
    y = _parse_float(doc, "y")
    loc = _parse_sphere(doc) if y != 0.0 else _parse_float(doc, "x")
    return SingularComponent(loc, int(doc["mult"]), int(doc["pole_order"]),
                             bool(doc["removable_candidate"]))


_KINDS = {
    "affine": lambda d: (AffineForm(parse_quaternion(d["a"]), parse_quaternion(d["b"]))
                         if "a" in d else AffineClass()),
    "pole": lambda d: PoleForm(parse_quaternion(d["a"]), parse_quaternion(d["b"]),
                               parse_quaternion(d["p"])),
    "real_pole": lambda d: RealPole(_parse_float(d, "x")),
    "sphere_pole": lambda d: SpherePole(_parse_sphere(d)),
}


def _parse_optional(doc):
    return None if doc is None else parse_document(doc)


def _parse_any(doc):
    return parse_document(doc)


def _passthrough(doc):
    return doc


# composite records emitted by the command line: field -> parser
_RECORDS = (
    {"class": _parse_any, "singular_set": _parse_any},
    {"a": parse_quaternion, "u": parse_quaternion},
    {"in": parse_quaternion, "out": _parse_optional, "singular": bool},
    {"suite": str, "seed": int, "trials": _passthrough, "suites": _passthrough, "passed": bool},
)


def _parse_record(doc):
    for fields in _RECORDS:
        if doc.keys() == fields.keys():
            return {k: fields[k](doc[k]) for k in doc}
    return None


def parse_document(doc):
    """Dispatch on the shape: quaternion, ``"inf"``, array of documents, or
    an object recognised by its ``kind`` or its keys."""
    if doc == "inf":
        return INF
    if isinstance(doc, list):
        if len(doc) == 4 and all(isinstance(v, (int, float)) for v in doc):
            return parse_quaternion(doc)
        return [parse_document(v) for v in doc]
    if isinstance(doc, dict):
        if "kind" in doc:
            try:
                return _KINDS[doc["kind"]](doc)
            except (KeyError, TypeError) as exc:
                raise ParseError(f"malformed {doc.get('kind')!r} document") from exc
        if {"a", "b", "c", "d"} <= doc.keys():
            return parse_matrix(doc)
        if {"den", "num"} <= doc.keys():
            return parse_quotient(doc)
        if "coeffs" in doc:
            return parse_polynomial(doc)
        if {"isolated", "spheres"} <= doc.keys():
            return parse_zero_set(doc)
        if "pole_order" in doc:
            return parse_singular_component(doc)
        record = _parse_record(doc)
        if record is not None:
            return record
    raise ParseError("unrecognized document")


from_jsonable = parse_document


def dumps(obj, **kwargs) -> str:
    return json.dumps(to_jsonable(obj), **kwargs)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return parse_document(doc)
