"""JSON encoding of rings, modules and functors.

Matrices are written column-major: ``"rel": [[col], [col], ...]`` and likewise
``"phi"`` and the optional ``"cert"`` of an arrow.  Functors built by a
constructor are written in shorthand (``{"ext1": module}``, ``{"tensor": ...}``,
``{"rep": ...}``, ``{"tor": ..., "n": k}``) so that decoding rebuilds an equal
object.
"""
from __future__ import annotations

from typing import Any, Optional

from .freyd import (
    FpFunctor,
    ext1_functor,
    ext_functor,
    rep_functor,
    tensor_functor,
    tor_functor,
)
from .modules import FpModule, ModMorphism, validate_morphism
from .ring import Mat, RingSpec, Side


class SchemaError(ValueError):
    """Input does not match the JSON schema."""


def _int_matrix_cols(obj: Any, nrows: int, what: str) -> list[list[int]]:
    if not isinstance(obj, list) or not all(isinstance(c, list) for c in obj):
        raise SchemaError(f"{what} must be a list of columns")
    for c in obj:
        if len(c) != nrows or not all(isinstance(x, int) and not isinstance(x, bool) for x in c):
            raise SchemaError(f"every column of {what} needs {nrows} integer entries")
    return obj


def ring_from_json(obj: Any) -> RingSpec:
    if isinstance(obj, str):
        try:
            return RingSpec.parse(obj)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    if not isinstance(obj, dict):
        raise SchemaError("ring must be an object like {\"kind\": \"Z\"}")
    try:
        return RingSpec.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad ring: {exc}") from None


def module_to_json(M: FpModule) -> dict:
    return {"gens": M.gens, "rel": M.rel.cols()}


def module_from_json(obj: Any, ring: Optional[RingSpec] = None) -> FpModule:
    if not isinstance(obj, dict) or "gens" not in obj:
        raise SchemaError("module must be an object with \"gens\" and \"rel\"")
    if "ring" in obj:
        ring = ring_from_json(obj["ring"])
    if ring is None:
        raise SchemaError("no ring given for module")
    g = obj["gens"]
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise SchemaError("\"gens\" must be a non-negative integer")
    cols = _int_matrix_cols(obj.get("rel", []), g, "rel")
    return FpModule(ring, g, Mat.from_cols(ring, cols, g))


_SHORTHAND = {"rep": rep_functor, "tensor": tensor_functor, "ext1": ext1_functor}


def functor_to_json(F: FpFunctor) -> dict:
    p = F.provenance
    out: dict
    if p.module is not None and p.kind in _SHORTHAND:
        out = {p.kind: module_to_json(p.module)}
    elif p.module is not None and p.kind in ("tor", "ext"):
        out = {p.kind: module_to_json(p.module), "n": p.degree}
    else:
        f = F.arrow
        out = {"arrow": {"X": module_to_json(f.src), "Y": module_to_json(f.tgt), "phi": f.phi.cols(),
                         "cert": f.cert.cols()}}
        if F.half_exact:
            out["half_exact"] = True
    if F.side is not Side.LEFT:
        out["side"] = F.side.value
    return out


def functor_from_json(obj: Any, ring: Optional[RingSpec] = None) -> FpFunctor:
    if not isinstance(obj, dict):
        raise SchemaError("functor must be an object")
    if "ring" in obj:
        ring = ring_from_json(obj["ring"])
    try:
        side = Side(obj.get("side", "left"))
    except ValueError:
        raise SchemaError("\"side\" must be \"left\" or \"right\"") from None
    for key, make in _SHORTHAND.items():
        if key in obj:
            return make(module_from_json(obj[key], ring), side)
    for key, make in (("tor", tor_functor), ("ext", ext_functor)):
        if key in obj:
            n = obj.get("n", 1)
            if not isinstance(n, int) or n < 1:
                raise SchemaError("\"n\" must be a positive integer")
            return make(module_from_json(obj[key], ring), n, side)
    if "arrow" not in obj:
        raise SchemaError("functor needs \"arrow\" or one of \"ext1\", \"tensor\", \"rep\", \"tor\", \"ext\"")
    a = obj["arrow"]
    if not isinstance(a, dict) or not {"X", "Y", "phi"} <= set(a):
        raise SchemaError("arrow needs \"X\", \"Y\" and \"phi\"")
    X, Y = module_from_json(a["X"], ring), module_from_json(a["Y"], ring)
    cols = _int_matrix_cols(a["phi"], Y.gens, "phi")
    if len(cols) != X.gens:
        raise SchemaError(f"phi needs {X.gens} columns")
    phi = Mat.from_cols(X.ring, cols, Y.gens)
    if "cert" in a:
        # optional well-definedness certificate; kept so that encoding round-trips exactly
        cert = Mat.from_cols(X.ring, _int_matrix_cols(a["cert"], Y.nrels, "cert"), Y.nrels)
        if cert.ncols != X.nrels or phi @ X.rel != Y.rel @ cert:
            raise SchemaError("cert does not certify phi")
        f = ModMorphism(X, Y, phi, cert)
    else:
        f = validate_morphism(X, Y, phi)
    if f is None:
        raise SchemaError("phi does not define a module map X -> Y")
    return FpFunctor(f, side, half_exact=bool(obj.get("half_exact", False)))
