"""Hom and Ext via the two-term complex, determinantal semi-invariants,
duality and the Auslander-Reiten translations.

Basis conventions of the differential (they fix the sign of ``semi_invariant``):

* columns: ``(vertex i, row r of phi_i, column c of phi_i)``, phi_i : M_i -> N_i;
* rows: ``(arrow a, row r, column c)`` of ``phi_t(a) M_a - N_a phi_s(a)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import Field
from .matrix import ExactMatrix, cokernel, det, kernel, rank
from .rep import (Morphism, Representation, RepresentationError, _same_category, paths_from,
                  projective)
from .rng import as_stream

CONVENTION = "rows=(arrow,target,source) cols=(vertex,target,source)"
ISO_SEARCH_CAP = 10**5


def _offsets(sizes) -> list[int]:
    out, pos = [], 0
    for n in sizes:
        out.append(pos)
        pos += n
    return out + [pos]


@dataclass(frozen=True)
class HomComplex:
    source: Representation
    target: Representation
    differential: ExactMatrix

    @property
    def hom_dim(self) -> int:
        return self.differential.cols - rank(self.differential)

    @property
    def ext_dim(self) -> int:
        return self.differential.rows - rank(self.differential)

    def column_offsets(self) -> list[int]:
        M, N = self.source, self.target
        return _offsets(N.dims[i] * M.dims[i] for i in M.quiver.vertices)

    def row_offsets(self) -> list[int]:
        M, N = self.source, self.target
        return _offsets(N.dims[t] * M.dims[s] for s, t in M.quiver.arrows)

    def morphism_from_vector(self, v) -> Morphism:
        M, N = self.source, self.target
        off = self.column_offsets()
        comps = []
        for i in M.quiver.vertices:
            block = v[off[i]:off[i + 1]]
            rows = [block[r * M.dims[i]:(r + 1) * M.dims[i]] for r in range(N.dims[i])]
            comps.append(ExactMatrix.from_rows(M.field, rows, M.dims[i]))
        return Morphism(M, N, tuple(comps))


def hom_complex(M: Representation, N: Representation) -> HomComplex:
    _same_category(M, N)
    F, Q = M.field, M.quiver
    col = _offsets(N.dims[i] * M.dims[i] for i in Q.vertices)
    row = _offsets(N.dims[t] * M.dims[s] for s, t in Q.arrows)
    D = [[F.zero] * col[-1] for _ in range(row[-1])]
    for a, (s, t) in enumerate(Q.arrows):
        Ma, Na = M.maps[a], N.maps[a]
        ms, mt, ns = M.dims[s], M.dims[t], N.dims[s]
        for r in range(N.dims[t]):
            for c in range(ms):
                R = D[row[a] + r * ms + c]
                for k in range(mt):
                    x = Ma[k, c]
                    if not F.is_zero(x):
                        j = col[t] + r * mt + k
                        R[j] = F.add(R[j], x)
                for k in range(ns):
                    x = Na[r, k]
                    if not F.is_zero(x):
                        j = col[s] + k * ms + c
                        R[j] = F.sub(R[j], x)
    return HomComplex(M, N, ExactMatrix.from_rows(F, D, col[-1]))


def hom_dim(M: Representation, N: Representation) -> int:
    return hom_complex(M, N).hom_dim


def ext_dim(M: Representation, N: Representation) -> int:
    return hom_complex(M, N).ext_dim


def hom_basis(M: Representation, N: Representation) -> list[Morphism]:
    C = hom_complex(M, N)
    K = kernel(C.differential)
    return [C.morphism_from_vector(K.column(j)) for j in range(K.cols)]


@dataclass(frozen=True)
class SemiInvariantValue:
    value: object
    field: Field
    m: int | None = None
    convention: str = CONVENTION

    @property
    def nonzero(self) -> bool:
        return not self.field.is_zero(self.value)


def semi_invariant(M: Representation, V: Representation, m: int | None = None) -> SemiInvariantValue:
    """Determinant of the Hom-complex differential (needs a zero Euler pairing)."""
    pairing = M.quiver.euler(M.dims, V.dims)
    if pairing != 0:
        raise RepresentationError(f"Euler pairing nonzero ({pairing}); the differential is not square")
    C = hom_complex(M, V)
    return SemiInvariantValue(det(C.differential), M.field, m)


def dual(M: Representation) -> Representation:
    """The dual representation, living on the opposite quiver."""
    return Representation(M.quiver.opposite(), M.field, M.dims, tuple(m.transpose() for m in M.maps))


# ------------------------------------------------------------- AR translation


def _right_multiplication(Q, F, a: int) -> Morphism:
    """P(t(a)) -> P(s(a)), p -> (a, *p)."""
    s, t = Q.arrows[a]
    Pt, Ps = projective(Q, F, t), projective(Q, F, s)
    from_t, from_s = paths_from(Q, t), paths_from(Q, s)
    comps = []
    for j in Q.vertices:
        index = {p: k for k, p in enumerate(from_s[j])}
        rows = [[F.zero] * len(from_t[j]) for _ in from_s[j]]
        for c, p in enumerate(from_t[j]):
            rows[index[(a,) + p]][c] = F.one
        comps.append(ExactMatrix.from_rows(F, rows, len(from_t[j])))
    return Morphism(Pt, Ps, tuple(comps))


def _postcompose_on_cochains(M: Representation, g: Morphism) -> ExactMatrix:
    """Action of ``psi -> g o psi`` on the degree-one term of the Hom complex."""
    Q, F = M.quiver, M.field
    X, Y = g.source, g.target
    rows_in = _offsets(X.dims[t] * M.dims[s] for s, t in Q.arrows)
    rows_out = _offsets(Y.dims[t] * M.dims[s] for s, t in Q.arrows)
    G = [[F.zero] * rows_in[-1] for _ in range(rows_out[-1])]
    for a, (s, t) in enumerate(Q.arrows):
        gt = g.components[t]
        ms = M.dims[s]
        for r in range(Y.dims[t]):
            for k in range(X.dims[t]):
                x = gt[r, k]
                if F.is_zero(x):
                    continue
                for c in range(ms):
                    G[rows_out[a] + r * ms + c][rows_in[a] + k * ms + c] = x
    return ExactMatrix.from_rows(F, G, rows_in[-1])


def ext_into_projectives(M: Representation):
    """For each vertex j, (projection, section) presenting Ext(M, P(j)) as a quotient."""
    F, Q = M.field, M.quiver
    return [cokernel(hom_complex(M, projective(Q, F, j)).differential) for j in Q.vertices]


def ext_functoriality(M: Representation, a: int, data=None) -> ExactMatrix:
    """Map Ext(M, P(t(a))) -> Ext(M, P(s(a))) induced by right multiplication by a."""
    Q, F = M.quiver, M.field
    data = data or ext_into_projectives(M)
    s, t = Q.arrows[a]
    G = _postcompose_on_cochains(M, _right_multiplication(Q, F, a))
    return data[s][0] @ G @ data[t][1]


def tau(M: Representation) -> Representation:
    """Auslander-Reiten translate: vertex j carries the dual of Ext(M, P(j))."""
    Q = M.quiver
    if not Q.is_acyclic:
        raise RepresentationError("the AR translation is only implemented for acyclic quivers")
    data = ext_into_projectives(M)
    dims = tuple(P.rows for P, _ in data)
    maps = tuple(ext_functoriality(M, a, data).transpose() for a in range(len(Q.arrows)))
    return Representation(Q, M.field, dims, maps)


def tau_minus(M: Representation) -> Representation:
    if not M.quiver.is_acyclic:
        raise RepresentationError("the AR translation is only implemented for acyclic quivers")
    return dual(tau(dual(M)))


def coxeter_image(Q, d) -> tuple[int, ...]:
    """``-A^{-1} A^T d``, the dimension vector of tau M for M without projective summands."""
    from fractions import Fraction

    from .matrix import inverse
    from .fields import field_from_spec

    Qf = field_from_spec("rat")
    A = ExactMatrix.build(Qf, [list(r) for r in Q.euler_matrix])
    v = ExactMatrix.build(Qf, [[x] for x in d])
    out = (inverse(A) @ A.transpose() @ v).column(0)
    assert all(Fraction(x).denominator == 1 for x in out)
    return tuple(-int(x) for x in out)


# ---------------------------------------------------------------- isomorphism


@dataclass(frozen=True)
class IsoVerdict:
    """``verdict`` is True, False or None (unknown)."""

    verdict: bool | None
    witness: Morphism | None = None
    reason: str = ""


def _combine(F: Field, basis, coeffs) -> Morphism:
    src, tgt = basis[0].source, basis[0].target
    comps = []
    for i in src.quiver.vertices:
        acc = ExactMatrix.zeros(F, tgt.dims[i], src.dims[i])
        for c, f in zip(coeffs, basis):
            if not F.is_zero(c):
                acc = acc + f.components[i].scale(c)
        comps.append(acc)
    return Morphism(src, tgt, tuple(comps))


def is_isomorphic(M: Representation, N: Representation, samples: int = 64, seed=0,
                  cap: int = ISO_SEARCH_CAP) -> IsoVerdict:
    """Search Hom(M, N) for an invertible element; never a false negative."""
    _same_category(M, N)
    if M.dims != N.dims:
        return IsoVerdict(False, reason="dimension vectors differ")
    if M.is_zero():
        return IsoVerdict(True, M.identity(), "zero representations")
    F = M.field
    basis = hom_basis(M, N)
    if len(basis) != hom_dim(M, M):
        return IsoVerdict(False, reason="dim Hom(M,N) differs from dim End(M)")
    if not basis:
        return IsoVerdict(False, reason="Hom(M,N) = 0")
    for f in basis:
        if f.is_isomorphism():
            return IsoVerdict(True, f, "basis element")
    if not F.is_finite or F.order >= 5:
        stream = as_stream(seed, "is_isomorphic")
        for _ in range(samples):
            f = _combine(F, basis, [F.sample(stream) for _ in basis])
            if f.is_isomorphism():
                return IsoVerdict(True, f, "random combination")
    if F.is_finite and F.order ** len(basis) <= cap:
        elements = list(F.elements())
        for coeffs in itertools.product(elements, repeat=len(basis)):
            f = _combine(F, basis, coeffs)
            if f.is_isomorphism():
                return IsoVerdict(True, f, "exhaustive search")
        return IsoVerdict(False, reason="no invertible element in Hom(M,N)")
    return IsoVerdict(None, reason="search inconclusive")
