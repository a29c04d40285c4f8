"""Exhaustive counts over every representation of a dimension vector over F_q."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .bounds import codim_bounds
from .fields import Field
from .homext import semi_invariant
from .matrix import ExactMatrix
from .quiver import Quiver
from .rep import Representation, RepresentationError
from .stability import theta_eval, verdict_from_subreps
from .subreps import SUBSPACE_CAP, enumerate_subreps

CENSUS_CAP = 10**6


def rep_space_dim(Q: Quiver, d) -> int:
    return sum(d[s] * d[t] for s, t in Q.arrows)


def all_reps(Q: Quiver, d, F: Field):
    """Every representation of dimension vector d, in lexicographic entry order."""
    shapes = [(d[t], d[s]) for s, t in Q.arrows]
    elements = list(F.elements())
    n = sum(r * c for r, c in shapes)
    for values in itertools.product(elements, repeat=n):
        maps, pos = [], 0
        for r, c in shapes:
            chunk = values[pos:pos + r * c]
            maps.append(ExactMatrix.from_rows(F, [chunk[i * c:(i + 1) * c] for i in range(r)], c))
            pos += r * c
        yield Representation(Q, F, tuple(d), tuple(maps))


@dataclass
class CensusReport:
    quiver: Quiver
    dims: tuple[int, ...]
    q: int
    total: int
    semistable: int | None = None
    stable: int | None = None
    subrep_counts: dict = field(default_factory=dict)  # d' -> number of M with a subrep of dim d'
    sigma_nonzero: list = field(default_factory=list)  # per sampled V

    def subrep_table(self) -> list[dict]:
        rows = []
        dim_rep = rep_space_dim(self.quiver, self.dims)
        for sub, count in sorted(self.subrep_counts.items()):
            quot = tuple(a - b for a, b in zip(self.dims, sub))
            b1 = codim_bounds(self.quiver, sub, quot)[0]
            rows.append({
                "d_sub": list(sub),
                "count": count,
                "observed_exponent": _log_q(count, self.q),
                "dim_rep": dim_rep,
                "b1": b1,
                "bound_exponent": dim_rep - b1,
            })
        return rows


def _log_q(count: int, q: int):
    """Exact integer exponent when count is a power of q, else a rounded decimal string."""
    if count == 0:
        return None
    k = round(math.log(count, q))
    if q ** k == count:
        return k
    return f"{math.log(count, q):.6f}"


def census(Q: Quiver, d, F: Field, theta=None, test_reps=(), cap: int = CENSUS_CAP,
           subspace_cap: int = SUBSPACE_CAP) -> CensusReport:
    d = Q.check_vector(d)
    if not F.is_finite:
        raise RepresentationError("census needs a finite field")
    total = F.order ** rep_space_dim(Q, d)
    if total > cap:
        raise RepresentationError(f"{total} representations exceed the census cap {cap}")
    balanced = theta is not None and theta_eval(theta, d) == 0
    report = CensusReport(Q, d, F.order, total)
    subs = [s for s in itertools.product(*(range(x + 1) for x in d))]
    report.subrep_counts = {s: 0 for s in subs}
    if balanced:
        report.semistable = report.stable = 0
    test_reps = list(test_reps)
    report.sigma_nonzero = [0] * len(test_reps)
    for M in all_reps(Q, d, F):
        subreps = enumerate_subreps(M, cap=subspace_cap)
        for s in {w.dims for w in subreps}:
            report.subrep_counts[s] += 1
        if balanced:
            status = verdict_from_subreps(M, theta, subreps).status
            report.semistable += status in ("semistable", "stable")
            report.stable += status == "stable"
        for k, V in enumerate(test_reps):
            report.sigma_nonzero[k] += semi_invariant(M, V).nonzero
    return report
