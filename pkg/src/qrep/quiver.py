"""Quivers, their Euler form and the quadratic (Tits) form.

Vertices are ``0..n-1`` internally; the public constructor :func:`build_quiver`
and all JSON/CLI surfaces use ``1..n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise QuiverError("a quiver needs at least one vertex")
        for a, (s, t) in enumerate(self.arrows):
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise QuiverError(f"arrow {a + 1} has an endpoint outside 1..{self.vertex_count}")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise QuiverError("label count does not match vertex count")

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def source(self, a: int) -> int:
        return self.arrows[a][0]

    def target(self, a: int) -> int:
        return self.arrows[a][1]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i + 1)

    def arrows_from(self, i: int) -> list[int]:
        return [a for a, (s, _) in enumerate(self.arrows) if s == i]

    def arrows_into(self, i: int) -> list[int]:
        return [a for a, (_, t) in enumerate(self.arrows) if t == i]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple((t, s) for s, t in self.arrows), self.labels)

    def check_vector(self, v, what: str = "dimension vector") -> tuple:
        v = tuple(v)
        if len(v) != self.vertex_count:
            raise QuiverError(f"{what} has length {len(v)}, expected {self.vertex_count}")
        return v

    # -- acyclicity

    def find_cycle(self) -> list[int] | None:
        """A vertex cycle ``[v0, v1, ..., v0]`` or None if the quiver is acyclic."""
        WHITE, GREY, BLACK = 0, 1, 2
        color = [WHITE] * self.vertex_count
        succ = [sorted({t for s, t in self.arrows if s == i}) for i in self.vertices]
        for root in self.vertices:
            if color[root] != WHITE:
                continue
            stack = [(root, iter(succ[root]))]
            path = [root]
            color[root] = GREY
            while stack:
                v, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    color[v] = BLACK
                    stack.pop()
                    path.pop()
                elif color[nxt] == GREY:
                    return path[path.index(nxt):] + [nxt]
                elif color[nxt] == WHITE:
                    color[nxt] = GREY
                    stack.append((nxt, iter(succ[nxt])))
                    path.append(nxt)
        return None

    @cached_property
    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    def admissible_ordering(self) -> tuple[int, ...]:
        """Topological order, ties broken by the smallest vertex id."""
        cycle = self.find_cycle()
        if cycle is not None:
            witness = "->".join(str(v + 1) for v in cycle)
            raise QuiverError(f"quiver has an oriented cycle: {witness}")
        indeg = [0] * self.vertex_count
        for s, t in self.arrows:
            indeg[t] += 1
        order = []
        ready = sorted(i for i in self.vertices if indeg[i] == 0)
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
            ready.sort()
        return tuple(order)

    # -- bilinear forms

    @cached_property
    def euler_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.vertex_count
        A = [[int(i == j) for j in range(n)] for i in range(n)]
        for s, t in self.arrows:
            A[s][t] -= 1
        return tuple(tuple(r) for r in A)

    @cached_property
    def tits_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        A = self.euler_matrix
        n = self.vertex_count
        return tuple(tuple(Fraction(A[i][j] + A[j][i], 2) for j in range(n)) for i in range(n))

    def euler(self, a, b) -> int:
        a = self.check_vector(a)
        b = self.check_vector(b)
        return sum(x * y for x, y in zip(a, b)) - sum(a[s] * b[t] for s, t in self.arrows)

    def tits(self, x):
        x = self.check_vector(x, "vector")
        return sum(xi * xi for xi in x) - sum(x[s] * x[t] for s, t in self.arrows)


def build_quiver(vertex_count: int, arrows, labels=None) -> Quiver:
    """Build a quiver from 1-based ``(source, target)`` pairs."""
    if vertex_count < 1:
        raise QuiverError("vertex_count must be at least 1")
    zero_based = []
    for a, pair in enumerate(arrows):
        s, t = pair
        if not (1 <= s <= vertex_count and 1 <= t <= vertex_count):
            raise QuiverError(f"arrow {a + 1} ({s}->{t}) has an endpoint outside 1..{vertex_count}")
        zero_based.append((s - 1, t - 1))
    return Quiver(vertex_count, tuple(zero_based), tuple(labels) if labels else None)


def is_acyclic(Q: Quiver) -> bool:
    return Q.is_acyclic


def admissible_ordering(Q: Quiver) -> tuple[int, ...]:
    """1-based admissible ordering."""
    return tuple(v + 1 for v in Q.admissible_ordering())


def euler_pairing(Q: Quiver, a, b) -> int:
    return Q.euler(a, b)


def tits_form(Q: Quiver, x):
    return Q.tits(x)


def euler_matrix_in_order(Q: Quiver, order) -> list[list[int]]:
    """Euler matrix with rows/columns permuted by a 0-based vertex order."""
    A = Q.euler_matrix
    return [[A[i][j] for j in order] for i in order]
