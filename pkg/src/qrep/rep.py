"""Representations of quivers over exact fields, and the maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fields import Field
from .matrix import ExactMatrix, block_diag, cokernel, image, kernel, rank, solve
from .quiver import Quiver
from .rng import as_stream


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    field: Field
    dims: tuple[int, ...]
    maps: tuple[ExactMatrix, ...]

    def __post_init__(self):
        Q = self.quiver
        if len(self.dims) != Q.vertex_count:
            raise RepresentationError(f"dimension vector has length {len(self.dims)}, expected {Q.vertex_count}")
        if any(d < 0 for d in self.dims):
            raise RepresentationError("dimensions must be nonnegative")
        if len(self.maps) != len(Q.arrows):
            raise RepresentationError(f"got {len(self.maps)} matrices for {len(Q.arrows)} arrows")
        for a, ((s, t), m) in enumerate(zip(Q.arrows, self.maps)):
            if m.field != self.field:
                raise RepresentationError(f"arrow {a + 1}: matrix is over {m.field.spec}, expected {self.field.spec}")
            if m.shape != (self.dims[t], self.dims[s]):
                raise RepresentationError(
                    f"arrow {a + 1}: matrix shape {m.rows}x{m.cols}, expected {self.dims[t]}x{self.dims[s]}"
                )

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_map(self, path) -> ExactMatrix:
        """Composite matrix along a path given as arrow indices in traversal order."""
        if not path:
            raise RepresentationError("trivial path needs a vertex; use identity")
        out = self.maps[path[0]]
        for a in path[1:]:
            out = self.maps[a] @ out
        return out

    def identity(self) -> "Morphism":
        return Morphism(self, self, tuple(ExactMatrix.identity(self.field, d) for d in self.dims))

    def __repr__(self):
        return f"Representation(dims={self.dims}, field={self.field.spec}, arrows={len(self.maps)})"


def make_rep(quiver: Quiver, field: Field, dims, maps) -> Representation:
    """Build a representation, coercing nested lists of ints/strings into matrices."""
    dims = tuple(int(d) for d in dims)
    built = []
    for a, ((s, t), m) in enumerate(zip(quiver.arrows, maps)):
        if isinstance(m, ExactMatrix):
            built.append(m)
            continue
        rows = [list(r) for r in m]
        if len(rows) == 0:
            built.append(ExactMatrix.zeros(field, 0, dims[s]))
            continue
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise RepresentationError(f"arrow {a + 1}: ragged matrix")
        built.append(ExactMatrix.build(field, rows, widths.pop()))
    if len(maps) != len(quiver.arrows):
        raise RepresentationError(f"got {len(maps)} matrices for {len(quiver.arrows)} arrows")
    return Representation(quiver, field, dims, tuple(built))


def zero_rep(quiver: Quiver, field: Field) -> Representation:
    return Representation(quiver, field, (0,) * quiver.vertex_count,
                          tuple(ExactMatrix.zeros(field, 0, 0) for _ in quiver.arrows))


def _same_category(M: Representation, N: Representation):
    if M.quiver != N.quiver:
        raise RepresentationError("representations live on different quivers")
    if M.field != N.field:
        raise RepresentationError(f"field mismatch: {M.field.spec} vs {N.field.spec}")


@dataclass(frozen=True)
class Morphism:
    source: Representation
    target: Representation
    components: tuple[ExactMatrix, ...]

    def __post_init__(self):
        M, N = self.source, self.target
        _same_category(M, N)
        if len(self.components) != M.quiver.vertex_count:
            raise RepresentationError("one component per vertex required")
        for i, f in enumerate(self.components):
            if f.shape != (N.dims[i], M.dims[i]):
                raise RepresentationError(f"vertex {i + 1}: component shape {f.shape}, expected {(N.dims[i], M.dims[i])}")
        for a, (s, t) in enumerate(M.quiver.arrows):
            if self.components[t] @ M.maps[a] != N.maps[a] @ self.components[s]:
                raise RepresentationError(f"arrow {a + 1}: square does not commute")

    def is_isomorphism(self) -> bool:
        return all(f.rows == f.cols and rank(f) == f.rows for f in self.components)

    def compose(self, other: "Morphism") -> "Morphism":
        """``self after other``."""
        return Morphism(other.source, self.target, tuple(f @ g for f, g in zip(self.components, other.components)))


@dataclass(frozen=True)
class SubrepWitness:
    """A subrepresentation given by per-vertex column bases inside ``ambient``."""

    ambient: Representation
    inclusions: tuple[ExactMatrix, ...]

    def __post_init__(self):
        M = self.ambient
        if len(self.inclusions) != M.quiver.vertex_count:
            raise RepresentationError("one inclusion per vertex required")
        for i, U in enumerate(self.inclusions):
            if U.field != M.field or U.rows != M.dims[i]:
                raise RepresentationError(f"vertex {i + 1}: inclusion has wrong shape or field")
            if rank(U) != U.cols:
                raise RepresentationError(f"vertex {i + 1}: inclusion is not injective")
        for a, (s, t) in enumerate(M.quiver.arrows):
            if solve(self.inclusions[t], M.maps[a] @ self.inclusions[s]) is None:
                raise RepresentationError(f"arrow {a + 1}: subspace is not stable under the arrow map")

    @classmethod
    def unchecked(cls, ambient: Representation, inclusions) -> "SubrepWitness":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ambient", ambient)
        object.__setattr__(obj, "inclusions", tuple(inclusions))
        return obj

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(U.cols for U in self.inclusions)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def is_everything(self) -> bool:
        return self.dims == self.ambient.dims


def whole(M: Representation) -> SubrepWitness:
    return SubrepWitness.unchecked(M, [ExactMatrix.identity(M.field, d) for d in M.dims])


def nothing(M: Representation) -> SubrepWitness:
    return SubrepWitness.unchecked(M, [ExactMatrix.zeros(M.field, d, 0) for d in M.dims])


def dim_vector(M: Representation) -> tuple[int, ...]:
    return M.dims


# ------------------------------------------------------------ basic objects


def simple(Q: Quiver, field: Field, i: int) -> Representation:
    """S(i) for a 0-based vertex i."""
    dims = tuple(int(j == i) for j in Q.vertices)
    return Representation(Q, field, dims, tuple(ExactMatrix.zeros(field, dims[t], dims[s]) for s, t in Q.arrows))


@lru_cache(maxsize=None)
def _cycle_vertices(Q: Quiver) -> frozenset:
    out = set()
    for v in Q.vertices:
        if v in _reachable(Q, v, strict=True):
            out.add(v)
    return frozenset(out)


@lru_cache(maxsize=None)
def _reachable(Q: Quiver, i: int, strict: bool = False, reverse: bool = False) -> frozenset:
    edges = [(t, s) if reverse else (s, t) for s, t in Q.arrows]
    seen = set() if strict else {i}
    frontier = [i]
    while frontier:
        v = frontier.pop()
        for s, t in edges:
            if s == v and t not in seen:
                seen.add(t)
                frontier.append(t)
    return frozenset(seen)


@lru_cache(maxsize=None)
def paths_from(Q: Quiver, i: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each vertex j, the sorted paths i -> j (arrow tuples in traversal order)."""
    if _reachable(Q, i) & _cycle_vertices(Q):
        raise RepresentationError(f"infinite-dimensional projective at vertex {i + 1}")
    buckets = [[] for _ in Q.vertices]
    stack = [((), i)]
    while stack:
        path, v = stack.pop()
        buckets[v].append(path)
        for a in Q.arrows_from(v):
            stack.append((path + (a,), Q.target(a)))
    return tuple(tuple(sorted(b)) for b in buckets)


@lru_cache(maxsize=None)
def paths_to(Q: Quiver, i: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each vertex j, the sorted paths j -> i."""
    if _reachable(Q, i, reverse=True) & _cycle_vertices(Q):
        raise RepresentationError(f"infinite-dimensional injective at vertex {i + 1}")
    buckets = [[] for _ in Q.vertices]
    stack = [((), i)]
    while stack:
        path, v = stack.pop()
        buckets[v].append(path)
        for a in Q.arrows_into(v):
            stack.append(((a,) + path, Q.source(a)))
    return tuple(tuple(sorted(b)) for b in buckets)


def projective(Q: Quiver, field: Field, i: int) -> Representation:
    """P(i): basis of P(i)_j is the paths i -> j; arrows extend paths."""
    paths = paths_from(Q, i)
    index = [{p: k for k, p in enumerate(ps)} for ps in paths]
    maps = []
    for a, (s, t) in enumerate(Q.arrows):
        rows = [[field.zero] * len(paths[s]) for _ in paths[t]]
        for c, p in enumerate(paths[s]):
            rows[index[t][p + (a,)]][c] = field.one
        maps.append(ExactMatrix.from_rows(field, rows, len(paths[s])))
    return Representation(Q, field, tuple(len(ps) for ps in paths), tuple(maps))


def injective(Q: Quiver, field: Field, i: int) -> Representation:
    """I(i): I(i)_j is dual to the paths j -> i."""
    paths = paths_to(Q, i)
    index = [{p: k for k, p in enumerate(ps)} for ps in paths]
    maps = []
    for a, (s, t) in enumerate(Q.arrows):
        rows = [[field.zero] * len(paths[s]) for _ in paths[t]]
        for r, q in enumerate(paths[t]):
            rows[r][index[s][(a,) + q]] = field.one
        maps.append(ExactMatrix.from_rows(field, rows, len(paths[s])))
    return Representation(Q, field, tuple(len(ps) for ps in paths), tuple(maps))


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise RepresentationError("direct sum of nothing")
    first = reps[0]
    for r in reps[1:]:
        _same_category(first, r)
    Q, F = first.quiver, first.field
    dims = tuple(sum(r.dims[i] for r in reps) for i in Q.vertices)
    maps = tuple(block_diag(F, [r.maps[a] for r in reps]) for a in range(len(Q.arrows)))
    return Representation(Q, F, dims, maps)


# ----------------------------------------------------- sub and quotient objects


def subrep(w: SubrepWitness) -> tuple[Representation, Morphism]:
    """The subrepresentation and its inclusion morphism."""
    M = w.ambient
    maps = []
    for a, (s, t) in enumerate(M.quiver.arrows):
        X = solve(w.inclusions[t], M.maps[a] @ w.inclusions[s])
        if X is None:
            raise RepresentationError(f"arrow {a + 1}: subspace is not stable under the arrow map")
        maps.append(X)
    sub = Representation(M.quiver, M.field, w.dims, tuple(maps))
    return sub, Morphism(sub, M, w.inclusions)


def quotient_data(w: SubrepWitness):
    """Per-vertex (projection, section) pairs for the quotient by ``w``."""
    return [cokernel(U) for U in w.inclusions]


def quotient(w: SubrepWitness) -> tuple[Representation, Morphism]:
    """The quotient representation and the projection morphism onto it.

    Quotient bases are the standard vectors off the pivots of each inclusion.
    """
    M = w.ambient
    data = quotient_data(w)
    maps = tuple(data[t][0] @ M.maps[a] @ data[s][1] for a, (s, t) in enumerate(M.quiver.arrows))
    dims = tuple(P.rows for P, _ in data)
    Qrep = Representation(M.quiver, M.field, dims, maps)
    return Qrep, Morphism(M, Qrep, tuple(P for P, _ in data))


def kernel_of(f: Morphism) -> tuple[Representation, Morphism]:
    w = SubrepWitness.unchecked(f.source, [kernel(c) for c in f.components])
    return subrep(w)


def image_witness(f: Morphism) -> SubrepWitness:
    return SubrepWitness.unchecked(f.target, [image(c) for c in f.components])


def image_of(f: Morphism) -> tuple[Representation, Morphism]:
    return subrep(image_witness(f))


def cokernel_of(f: Morphism) -> tuple[Representation, Morphism]:
    return quotient(image_witness(f))


def preimage(w_quot: SubrepWitness, w_base: SubrepWitness) -> SubrepWitness:
    """Lift a subrep of ``ambient / w_base`` back to a subrep of the ambient."""
    data = quotient_data(w_base)
    incl = []
    for U, (P, C), B in zip(w_base.inclusions, data, w_quot.inclusions):
        incl.append(U.hstack(C @ B))
    return SubrepWitness.unchecked(w_base.ambient, incl)


def push_witness(w: SubrepWitness, f: Morphism) -> SubrepWitness:
    """Image of a subrepresentation under a morphism, in canonical form."""
    return SubrepWitness.unchecked(f.target, [image(c @ U) for c, U in zip(f.components, w.inclusions)])


# ---------------------------------------------------------------- resolution


def _tensor_projectives(Q: Quiver, F: Field, summands):
    """Direct sum of P(v) for each vertex v in ``summands`` (with repetition).

    Returns the representation and, per vertex j, a list of basis labels
    ``(summand index, path)``.
    """
    labels = [[] for _ in Q.vertices]
    for k, v in enumerate(summands):
        ps = paths_from(Q, v)
        for j in Q.vertices:
            labels[j].extend((k, p) for p in ps[j])
    index = [{lab: n for n, lab in enumerate(ls)} for ls in labels]
    maps = []
    for a, (s, t) in enumerate(Q.arrows):
        rows = [[F.zero] * len(labels[s]) for _ in labels[t]]
        for c, (k, p) in enumerate(labels[s]):
            rows[index[t][(k, p + (a,))]][c] = F.one
        maps.append(ExactMatrix.from_rows(F, rows, len(labels[s])))
    rep = Representation(Q, F, tuple(len(ls) for ls in labels), tuple(maps))
    return rep, labels, index


def canonical_resolution(M: Representation):
    """``0 -> P1 -> P0 -> M -> 0`` with P0 = sum_i M_i (x) P(i), P1 = sum_a M_s(a) (x) P(t(a)).

    Returns ``(P1, P0, inclusion, projection)``.
    """
    Q, F = M.quiver, M.field
    if not Q.is_acyclic:
        raise RepresentationError("canonical resolution needs an acyclic quiver")
    p0_summands = [i for i in Q.vertices for _ in range(M.dims[i])]
    p0_first = {}
    for k, i in enumerate(p0_summands):
        p0_first.setdefault(i, k)
    p1_summands = [t for (s, t) in Q.arrows for _ in range(M.dims[s])]
    P0, lab0, idx0 = _tensor_projectives(Q, F, p0_summands)
    P1, lab1, _ = _tensor_projectives(Q, F, p1_summands)
    # which arrow and basis vector of M_s(a) each P1 summand carries
    p1_origin = [(a, m) for a, (s, t) in enumerate(Q.arrows) for m in range(M.dims[s])]

    incl = []
    for j in Q.vertices:
        rows = [[F.zero] * len(lab1[j]) for _ in lab0[j]]
        for c, (k, q) in enumerate(lab1[j]):
            a, m = p1_origin[k]
            s, t = Q.arrows[a]
            row = idx0[j][(p0_first[s] + m, (a,) + q)]
            rows[row][c] = F.add(rows[row][c], F.one)
            for r in range(M.dims[t]):
                coeff = M.maps[a][r, m]
                if not F.is_zero(coeff):
                    row = idx0[j][(p0_first[t] + r, q)]
                    rows[row][c] = F.sub(rows[row][c], coeff)
        incl.append(ExactMatrix.from_rows(F, rows, len(lab1[j])))

    proj = []
    for j in Q.vertices:
        cols = []
        for k, p in lab0[j]:
            i = p0_summands[k]
            m = k - p0_first[i]
            e = [F.one if r == m else F.zero for r in range(M.dims[i])]
            v = ExactMatrix.from_columns(F, [e], M.dims[i])
            if p:
                v = M.path_map(p) @ v
            cols.append(v.column(0))
        proj.append(ExactMatrix.from_columns(F, cols, M.dims[j]))
    return P1, P0, Morphism(P1, P0, tuple(incl)), Morphism(P0, M, tuple(proj))


# ---------------------------------------------------------------- sampling


def random_rep(Q: Quiver, dims, field: Field, seed=0, entry_field: Field | None = None) -> Representation:
    """Uniform entries per the field's sampler; ``entry_field`` samples in a subfield."""
    dims = tuple(Q.check_vector(dims))
    stream = as_stream(seed, "random_rep")
    src = entry_field or field
    maps = []
    for s, t in Q.arrows:
        rows = [[field.embed(src.sample(stream), src) for _ in range(dims[s])] for _ in range(dims[t])]
        maps.append(ExactMatrix.from_rows(field, rows, dims[s]))
    return Representation(Q, field, dims, tuple(maps))


def base_change(M: Representation, field: Field) -> Representation:
    maps = tuple(m.map(lambda x: field.embed(x, M.field), field) for m in M.maps)
    return Representation(M.quiver, field, M.dims, maps)
