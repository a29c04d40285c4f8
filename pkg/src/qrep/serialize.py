"""JSON forms of quivers, representations, certificates and results.

Vertices are 1-based, matrices row-major, field elements decimal strings.
"""

from __future__ import annotations

import json

from .fields import Field, field_from_spec
from .matrix import ExactMatrix
from .quiver import Quiver, QuiverError, build_quiver
from .rep import Representation, SubrepWitness, make_rep


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def quiver_to_json(Q: Quiver) -> dict:
    out = {"vertices": Q.vertex_count, "arrows": [[s + 1, t + 1] for s, t in Q.arrows]}
    if Q.labels:
        out["labels"] = list(Q.labels)
    return out


def quiver_from_json(obj) -> Quiver:
    try:
        return build_quiver(int(obj["vertices"]), [tuple(a) for a in obj["arrows"]], obj.get("labels"))
    except (KeyError, TypeError) as exc:
        raise QuiverError(f"malformed quiver JSON: {exc}") from None


def matrix_to_json(m: ExactMatrix) -> list:
    return m.to_strings()


def rep_to_json(M: Representation) -> dict:
    return {
        "quiver": quiver_to_json(M.quiver),
        "field": M.field.spec,
        "dims": list(M.dims),
        "maps": [matrix_to_json(m) for m in M.maps],
    }


def rep_from_json(obj, quiver: Quiver | None = None, field: Field | None = None) -> Representation:
    Q = quiver_from_json(obj["quiver"]) if "quiver" in obj else quiver
    F = field_from_spec(obj["field"]) if "field" in obj else field
    if Q is None or F is None:
        raise ValueError("representation JSON needs a quiver and a field")
    return make_rep(Q, F, obj["dims"], obj["maps"])


def witness_to_json(w: SubrepWitness) -> dict:
    return {"dims": list(w.dims), "bases": [matrix_to_json(U) for U in w.inclusions]}


def verdict_to_json(M: Representation, theta, verdict) -> dict:
    out = {"status": verdict.status, "method": verdict.method, "theta": list(theta), "dims": list(M.dims)}
    if verdict.subrep is not None:
        out["certificate"] = witness_to_json(verdict.subrep)
    elif verdict.test_rep is not None:
        out["certificate"] = {"m": verdict.m, "test_rep": rep_to_json(verdict.test_rep)}
    else:
        out["certificate"] = None
    if verdict.method == "semi-invariant":
        out["samples_used"] = verdict.samples_used
        out["m"] = verdict.m
    return out


def frac(x) -> str:
    return str(x)
