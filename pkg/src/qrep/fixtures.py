"""Named quivers used by the CLI, the docs and the tests."""

from __future__ import annotations

from .quiver import Quiver, QuiverError, build_quiver

NAMES = ("a2", "a3", "kronecker:n", "jordan", "subspace:n")


def named_quiver(name: str) -> Quiver:
    """``a2``, ``a3``, ``kronecker:n``, ``jordan`` or ``subspace:n``."""
    kind, _, arg = name.partition(":")
    if kind == "a2" and not arg:
        return build_quiver(2, [(1, 2)])
    if kind == "a3" and not arg:
        return build_quiver(3, [(1, 2), (2, 3)])
    if kind == "jordan" and not arg:
        return build_quiver(1, [(1, 1)])
    if kind in ("kronecker", "subspace"):
        try:
            n = int(arg)
        except ValueError:
            raise QuiverError(f"fixture {name!r} needs an integer parameter") from None
        if n < 1:
            raise QuiverError(f"fixture {name!r} needs a positive parameter")
        if kind == "kronecker":
            return build_quiver(2, [(1, 2)] * n)
        return build_quiver(n + 1, [(i, n + 1) for i in range(1, n + 1)])
    raise QuiverError(f"unknown quiver fixture {name!r}; known: {', '.join(NAMES)}")
