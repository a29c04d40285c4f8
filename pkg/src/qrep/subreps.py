"""Exhaustive enumeration of subrepresentations over a finite field."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .fields import Field
from .matrix import ExactMatrix, in_span
from .rep import Representation, RepresentationError, SubrepWitness

SUBSPACE_CAP = 10**6


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def subspaces(F: Field, n: int, k: int) -> tuple:
    """All k-dimensional subspaces of F^n as ``(rref rows, pivots)``, in canonical order."""
    elements = list(F.elements())
    out = []
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]
        for values in itertools.product(elements, repeat=len(free)):
            rows = [[F.zero] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = F.one
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            out.append((tuple(tuple(r) for r in rows), pivots))
    return tuple(out)


def _subspace_count(n: int, q: int, k: int | None) -> int:
    if k is not None:
        return gaussian_binomial(n, k, q)
    return sum(gaussian_binomial(n, j, q) for j in range(n + 1))


def enumerate_subreps(M: Representation, dims=None, cap: int = SUBSPACE_CAP) -> list[SubrepWitness]:
    """Every subrepresentation of M (or those of dimension vector ``dims``).

    Each subspace is in canonical form (the transpose of its basis is in RREF),
    so the output is duplicate-free; order is lexicographic over vertices.
    """
    F = M.field
    if not F.is_finite:
        raise RepresentationError(f"subrepresentation enumeration needs a finite field, got {F.spec}")
    Q = M.quiver
    if dims is not None:
        dims = Q.check_vector(dims)
        if any(k < 0 or k > n for k, n in zip(dims, M.dims)):
            return []
    total = 1
    for i in Q.vertices:
        total *= _subspace_count(M.dims[i], F.order, dims[i] if dims is not None else None)
    if total > cap:
        raise RepresentationError(
            f"{total} candidate subspace tuples exceed the cap {cap}; use a smaller field or dimension vector"
        )

    choices = []
    for i in Q.vertices:
        ks = [dims[i]] if dims is not None else range(M.dims[i] + 1)
        choices.append([sub for k in ks for sub in subspaces(F, M.dims[i], k)])

    # arrows checked as soon as both endpoints are fixed
    checks = [[] for _ in Q.vertices]
    for a, (s, t) in enumerate(Q.arrows):
        checks[max(s, t)].append(a)

    images: dict = {}

    def stable(a, chosen) -> bool:
        s, t = Q.arrows[a]
        rows_s, _ = chosen[s]
        rows_t, piv_t = chosen[t]
        key = (a, rows_s)
        img = images.get(key)
        if img is None:
            Ma = M.maps[a]
            img = [tuple(_apply(F, Ma, v)) for v in rows_s]
            images[key] = img
        return all(in_span(F, rows_t, piv_t, v) for v in img)

    out = []
    chosen = [None] * Q.vertex_count

    def descend(i):
        if i == Q.vertex_count:
            incl = [ExactMatrix.from_columns(F, rows, M.dims[j]) for j, (rows, _) in enumerate(chosen)]
            out.append(SubrepWitness.unchecked(M, incl))
            return
        for sub in choices[i]:
            chosen[i] = sub
            if all(stable(a, chosen) for a in checks[i]):
                descend(i + 1)
        chosen[i] = None

    descend(0)
    return out


def _apply(F: Field, A: ExactMatrix, v) -> list:
    return [_dot(F, row, v) for row in A.entries]


def _dot(F: Field, row, v):
    acc = F.zero
    for a, b in zip(row, v):
        if not F.is_zero(a) and not F.is_zero(b):
            acc = F.add(acc, F.mul(a, b))
    return acc


def subrep_dims(M: Representation, cap: int = SUBSPACE_CAP) -> list[tuple[int, ...]]:
    return [w.dims for w in enumerate_subreps(M, cap=cap)]
