"""Families over the valuation ring k[t]_(t) inside k(t), and semistable reduction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .fields import RationalFunctionField
from .matrix import ExactMatrix, inverse
from .quiver import Quiver
from .rep import Morphism, Representation, RepresentationError
from .stability import (StabilityError, certify_semistable, check_semistable_oracle, maximal_destabilizer,
                        slope, theta_eval)
from .subreps import SUBSPACE_CAP

MAX_ITER = 100


class LangtonError(RuntimeError):
    def __init__(self, message: str, trace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class DVRFamily:
    """A representation over k(t) whose matrices have entries of nonnegative valuation."""

    quiver: Quiver
    field: RationalFunctionField
    dims: tuple[int, ...]
    maps: tuple[ExactMatrix, ...]

    def __post_init__(self):
        if not isinstance(self.field, RationalFunctionField) or not self.field.base.is_finite:
            raise RepresentationError("families need a field k(t) with k finite")
        Representation(self.quiver, self.field, self.dims, self.maps)
        for a, m in enumerate(self.maps):
            for row in m.entries:
                for x in row:
                    if not self.field.is_integral(x):
                        raise RepresentationError(f"arrow {a + 1}: entry {self.field.format(x)} is not integral")

    @classmethod
    def from_rep(cls, M: Representation) -> "DVRFamily":
        return cls(M.quiver, M.field, M.dims, M.maps)

    @property
    def residue_field(self):
        return self.field.base


def generic_fiber(F: DVRFamily) -> Representation:
    return Representation(F.quiver, F.field, F.dims, F.maps)


def special_fiber(F: DVRFamily) -> Representation:
    k = F.residue_field
    return Representation(F.quiver, k, F.dims, tuple(m.map(F.field.reduce, k) for m in F.maps))


def _min_valuation(K: RationalFunctionField, m: ExactMatrix):
    return min((K.valuation(x) for row in m.entries for x in row), default=float("inf"))


@dataclass(frozen=True)
class IntegralModel:
    family: DVRFamily
    exponents: tuple[int, ...]
    witness: Morphism  # M -> generic fiber of the family


def integral_model(M: Representation) -> IntegralModel:
    """Rescale vertex i by t^{m_i} so every arrow becomes integral, with m_i >= 0 minimal."""
    Q, K = M.quiver, M.field
    if not isinstance(K, RationalFunctionField):
        raise RepresentationError("integral models need a representation over k(t)")
    order = Q.admissible_ordering()
    m = [0] * Q.vertex_count
    for v in order:
        need = 0
        for a in Q.arrows_into(v):
            val = _min_valuation(K, M.maps[a])
            if val != float("inf"):
                need = max(need, m[Q.source(a)] - val)
        m[v] = need
    maps = tuple(M.maps[a].scale(K.t_power(m[t] - m[s])) for a, (s, t) in enumerate(Q.arrows))
    fam = DVRFamily(Q, K, M.dims, maps)
    witness = Morphism(M, generic_fiber(fam), tuple(ExactMatrix.scalar(K, d, K.t_power(m[i]))
                                                     for i, d in enumerate(M.dims)))
    return IntegralModel(fam, tuple(m), witness)


@dataclass
class LangtonResult:
    family: DVRFamily
    iterations: int
    trace: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)  # generic-fiber isomorphisms, one per step


def _elementary_modification(F: DVRFamily, top) -> tuple[DVRFamily, Morphism]:
    """Replace M by the preimage of the special-fiber subrep ``top``."""
    K, k = F.field, F.residue_field
    bases = []
    for i, U in enumerate(top.inclusions):
        n = F.dims[i]
        pivots = []
        for col in U.columns():
            pivots.append(next(r for r, x in enumerate(col) if not k.is_zero(x)))
        complement = [r for r in range(n) if r not in pivots]
        cols = [[K.constant(x) for x in col] for col in U.columns()]
        for r in complement:
            cols.append([K.t_power(1) if j == r else K.zero for j in range(n)])
        bases.append(ExactMatrix.from_columns(K, cols, n))
    inverses = [inverse(T) for T in bases]
    maps = tuple(inverses[t] @ A @ bases[s] for A, (s, t) in zip(F.maps, F.quiver.arrows))
    new = DVRFamily(F.quiver, K, F.dims, maps)
    return new, Morphism(generic_fiber(F), generic_fiber(new), tuple(inverses))


def langton_reduce(F: DVRFamily, theta, max_iter: int = MAX_ITER, assume_semistable: bool = False,
                   samples: int = 100, seed=0, cap: int = SUBSPACE_CAP) -> LangtonResult:
    """Modify F until its special fiber is semistable, keeping the generic fiber."""
    theta = F.quiver.check_vector(theta, "theta")
    if theta_eval(theta, F.dims) != 0:
        raise StabilityError("theta(d) must vanish")
    if not assume_semistable:
        generic = generic_fiber(F)
        verdict = certify_semistable(generic, theta, "sharp", samples, seed, entry_field=F.residue_field)
        if verdict.status == "unknown":
            verdict = certify_semistable(generic, theta, "crude", samples, seed, entry_field=F.residue_field)
        if verdict.status == "unknown":
            raise StabilityError("generic fiber not certified semistable")
    result = LangtonResult(F, 0)
    current = F
    for it in range(max_iter + 1):
        special = special_fiber(current)
        if check_semistable_oracle(special, theta, cap).is_semistable:
            result.family = current
            result.iterations = it
            return result
        if it == max_iter:
            break
        top = maximal_destabilizer(special, theta, cap)
        current, witness = _elementary_modification(current, top)
        result.witnesses.append(witness)
        result.trace.append({
            "iteration": it + 1,
            "destabilizer_dims": list(top.dims),
            "destabilizer_slope": str(slope(theta, top.dims)),
        })
    raise LangtonError(f"no semistable special fiber after {max_iter} iterations", result.trace)
