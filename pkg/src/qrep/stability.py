"""Stability with respect to an integer functional on dimension vectors.

Two independent routes decide semistability:

* :func:`check_semistable_oracle` enumerates every subrepresentation over a
  finite field and reads off the definition directly;
* :func:`certify_semistable` samples test representations V of dimension
  ``m * beta`` and looks for a nonvanishing determinantal semi-invariant,
  which proves semistability and never proves the opposite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import effective_m, sharpened_m
from .fields import Field
from .matrix import ExactMatrix, solve
from .quiver import Quiver
from .rep import (Representation, SubrepWitness, direct_sum, nothing, preimage,
                  quotient, random_rep, subrep, whole)
from .homext import hom_dim, is_isomorphic, semi_invariant
from .rng import as_stream
from .subreps import SUBSPACE_CAP, enumerate_subreps

MIN_FIELD_SIZE = 101
DEFAULT_SAMPLES = 32


class StabilityError(ValueError):
    pass


def theta_eval(theta, d) -> int:
    if len(theta) != len(d):
        raise StabilityError("theta and dimension vector have different lengths")
    return sum(a * b for a, b in zip(theta, d))


def slope(theta, d) -> Fraction:
    total = sum(d)
    if total == 0:
        raise StabilityError("slope of the zero dimension vector")
    return Fraction(theta_eval(theta, d), total)


def theta_from_alpha(Q: Quiver, alpha) -> tuple[int, ...]:
    """The functional d -> <alpha, d>."""
    alpha = Q.check_vector(alpha, "alpha")
    return tuple(Q.euler(alpha, [int(i == j) for j in Q.vertices]) for i in Q.vertices)


def eta_from_beta(Q: Quiver, beta) -> tuple[int, ...]:
    """The functional d -> -<d, beta>."""
    beta = Q.check_vector(beta, "beta")
    return tuple(-Q.euler([int(i == j) for j in Q.vertices], beta) for i in Q.vertices)


@dataclass(frozen=True)
class InvertedTheta:
    vector: tuple[int, ...]
    is_dimension_vector: bool


def _invert(Q: Quiver, theta, transpose: bool) -> InvertedTheta:
    from .fields import field_from_spec
    from .matrix import inverse

    theta = Q.check_vector(theta, "theta")
    Qf = field_from_spec("rat")
    A = ExactMatrix.build(Qf, [list(r) for r in Q.euler_matrix])
    try:
        Ainv = inverse(A)
    except ZeroDivisionError:
        raise StabilityError("Euler matrix is singular; theta has no unique preimage") from None
    rhs = ExactMatrix.build(Qf, [[x] for x in theta])
    # theta_alpha = A^T alpha,  eta_beta = -A beta
    sol = (inverse(A.transpose()) @ rhs if transpose else (Ainv @ rhs).scale(Fraction(-1))).column(0)
    if any(x.denominator != 1 for x in sol):
        raise StabilityError(f"preimage {tuple(str(x) for x in sol)} is not integral")
    vec = tuple(int(x) for x in sol)
    return InvertedTheta(vec, all(x >= 0 for x in vec))


def beta_of(Q: Quiver, theta) -> InvertedTheta:
    """beta with eta_beta = theta; on acyclic quivers beta_i = -theta(P(i))."""
    return _invert(Q, theta, transpose=False)


def alpha_of(Q: Quiver, theta) -> InvertedTheta:
    """alpha with theta_alpha = theta; on acyclic quivers alpha_i = theta(I(i))."""
    return _invert(Q, theta, transpose=True)


# ------------------------------------------------------------------ verdicts


@dataclass(frozen=True)
class StabilityVerdict:
    status: str  # semistable | stable | unstable | unknown
    method: str  # oracle | semi-invariant
    subrep: SubrepWitness | None = None
    test_rep: Representation | None = None
    m: int | None = None
    samples_used: int = 0

    @property
    def is_semistable(self) -> bool | None:
        if self.status == "unknown":
            return None
        return self.status in ("semistable", "stable")


def _require_balanced(M: Representation, theta):
    if theta_eval(theta, M.dims) != 0:
        raise StabilityError("theta(d) must vanish")


def check_semistable_oracle(M: Representation, theta, cap: int = SUBSPACE_CAP) -> StabilityVerdict:
    """Decide (semi)stability by enumerating every subrepresentation."""
    theta = M.quiver.check_vector(theta, "theta")
    _require_balanced(M, theta)
    return verdict_from_subreps(M, theta, enumerate_subreps(M, cap=cap))


def verdict_from_subreps(M: Representation, theta, subs) -> StabilityVerdict:
    """Oracle verdict from a complete list of subrepresentations of M."""
    worst = None
    zero_count = 0
    strict = None
    for w in subs:
        val = theta_eval(theta, w.dims)
        if val > 0 and (worst is None or val > worst[0]):
            worst = (val, w)
        if val == 0:
            zero_count += 1
            if strict is None and not w.is_zero() and not w.is_everything():
                strict = w
    if worst is not None:
        return StabilityVerdict("unstable", "oracle", subrep=worst[1])
    if zero_count == 2 and not M.is_zero():
        return StabilityVerdict("stable", "oracle")
    return StabilityVerdict("semistable", "oracle", subrep=strict)


def certify_semistable(M: Representation, theta, strategy: str = "crude", samples: int = DEFAULT_SAMPLES,
                       seed=0, min_field_size: int = MIN_FIELD_SIZE, entry_field: Field | None = None,
                       m: int | None = None) -> StabilityVerdict:
    """Look for V of dimension ``m * beta`` with a nonzero semi-invariant against M."""
    Q, F = M.quiver, M.field
    theta = Q.check_vector(theta, "theta")
    _require_balanced(M, theta)
    beta = beta_of(Q, theta)
    if not beta.is_dimension_vector:
        raise StabilityError(f"beta = {beta.vector} is not a dimension vector")
    if F.is_finite and F.order < min_field_size:
        raise StabilityError(f"field {F.spec} has fewer than {min_field_size} elements")
    if m is None:
        if M.is_zero():
            m = 1
        elif strategy == "crude":
            m = effective_m(Q, M.dims)
        elif strategy == "sharp":
            m = sharpened_m(Q, M.dims, beta.vector)
        else:
            raise StabilityError(f"unknown strategy {strategy!r}")
    dims_v = tuple(m * b for b in beta.vector)
    stream = as_stream(seed, "certify_semistable")
    for k in range(samples):
        V = random_rep(Q, dims_v, F, stream.child(k), entry_field=entry_field)
        if semi_invariant(M, V).nonzero:
            return StabilityVerdict("semistable", "semi-invariant", test_rep=V, m=m, samples_used=k + 1)
    return StabilityVerdict("unknown", "semi-invariant", m=m, samples_used=samples)


def revalidate(M: Representation, theta, verdict: StabilityVerdict) -> bool:
    """Check a verdict's certificate against its definition."""
    if verdict.test_rep is not None:
        return verdict.status == "semistable" and hom_dim(M, verdict.test_rep) == 0
    if verdict.subrep is not None:
        w = SubrepWitness(M, verdict.subrep.inclusions)
        val = theta_eval(theta, w.dims)
        if verdict.status == "unstable":
            return val > 0
        return val == 0 and not w.is_zero() and not w.is_everything()
    return verdict.status in ("stable", "semistable", "unknown")


# --------------------------------------------------------------- filtrations


def subquotient(upper: SubrepWitness, lower: SubrepWitness) -> Representation:
    """``upper / lower`` for subrepresentations lower <= upper of the same ambient."""
    top, _ = subrep(upper)
    coords = []
    for U, L in zip(upper.inclusions, lower.inclusions):
        X = solve(U, L)
        if X is None:
            raise StabilityError("filtration steps are not nested")
        coords.append(X)
    return quotient(SubrepWitness.unchecked(top, coords))[0]


@dataclass(frozen=True)
class Filtration:
    """Descending chain ``steps[k] = F_{start + k}``; ``steps[0]`` is M, ``steps[-1]`` is 0."""

    representation: Representation
    start: int
    steps: tuple[SubrepWitness, ...]

    def __post_init__(self):
        if not self.steps:
            raise StabilityError("empty filtration")
        if not self.steps[0].is_everything():
            raise StabilityError("filtration must begin with the whole representation")
        if not self.steps[-1].is_zero():
            raise StabilityError("filtration must end with zero")
        for k, (a, b) in enumerate(zip(self.steps, self.steps[1:])):
            for U, L in zip(a.inclusions, b.inclusions):
                if solve(U, L) is None:
                    raise StabilityError(f"step {self.start + k + 1} is not contained in step {self.start + k}")

    def indices(self) -> range:
        return range(self.start, self.start + len(self.steps))

    def step(self, n: int) -> SubrepWitness:
        if n <= self.start:
            return self.steps[0]
        if n >= self.start + len(self.steps):
            return self.steps[-1]
        return self.steps[n - self.start]

    def graded_pieces(self) -> list[tuple[int, Representation]]:
        return [(self.start + k, subquotient(a, b)) for k, (a, b) in enumerate(zip(self.steps, self.steps[1:]))]


def gr(f: Filtration) -> Representation:
    pieces = [piece for _, piece in f.graded_pieces()]
    if not pieces:
        return f.representation
    return direct_sum(*pieces)


def filtration_weight(f: Filtration, theta) -> int:
    """``-sum n * theta(gr_n)``, checked against ``-sum theta(F_n)``."""
    M = f.representation
    theta = M.quiver.check_vector(theta, "theta")
    _require_balanced(M, theta)
    graded = -sum(n * theta_eval(theta, piece.dims) for n, piece in f.graded_pieces())
    telescoped = -sum(theta_eval(theta, w.dims) for w in f.steps)
    if graded != telescoped:
        raise AssertionError(f"weight formulas disagree: {graded} vs {telescoped}")
    return graded


def two_step(M: Representation, w: SubrepWitness) -> Filtration:
    """F_0 = M, F_1 = w, F_2 = 0."""
    return Filtration(M, 0, (whole(M), w, nothing(M)))


@dataclass(frozen=True)
class HNResult:
    chain: tuple[SubrepWitness, ...]  # 0 = M^0 < M^1 < ... < M^r = M
    slopes: tuple[Fraction, ...]

    def quotients(self) -> list[Representation]:
        return [subquotient(b, a) for a, b in zip(self.chain, self.chain[1:])]


def maximal_destabilizer(M: Representation, theta, cap: int = SUBSPACE_CAP) -> SubrepWitness:
    """Nonzero subrep of maximal slope, and among those of maximal dimension."""
    best, best_key, tied = None, None, False
    for w in enumerate_subreps(M, cap=cap):
        if w.is_zero():
            continue
        key = (slope(theta, w.dims), sum(w.dims))
        if best_key is None or key > best_key:
            best, best_key, tied = w, key, False
        elif key == best_key:
            tied = True
    if tied:
        raise AssertionError("maximal destabilizing subrepresentation is not unique")
    return best


def hn_filtration(M: Representation, theta, cap: int = SUBSPACE_CAP) -> HNResult:
    theta = M.quiver.check_vector(theta, "theta")
    chain = [nothing(M)]
    slopes = []
    current = M
    while not chain[-1].is_everything():
        top = maximal_destabilizer(current, theta, cap)
        slopes.append(slope(theta, top.dims))
        chain.append(preimage(top, chain[-1]) if len(chain) > 1 else top)
        current = quotient(chain[-1])[0]
    return HNResult(tuple(chain), tuple(slopes))


def jh_filtration(M: Representation, theta, cap: int = SUBSPACE_CAP) -> Filtration:
    """Jordan-Hoelder filtration of a semistable representation, as a descending chain."""
    theta = M.quiver.check_vector(theta, "theta")
    if not check_semistable_oracle(M, theta, cap).is_semistable:
        raise StabilityError("Jordan-Hoelder filtration needs a semistable representation")
    chain = [nothing(M)]
    current = M
    while not chain[-1].is_everything():
        candidates = [w for w in enumerate_subreps(current, cap=cap)
                      if not w.is_zero() and theta_eval(theta, w.dims) == 0]
        piece = min(candidates, key=lambda w: sum(w.dims))
        if check_semistable_oracle(subrep(piece)[0], theta, cap).status != "stable":
            raise AssertionError("minimal balanced subrepresentation is not stable")
        chain.append(preimage(piece, chain[-1]) if len(chain) > 1 else piece)
        current = quotient(chain[-1])[0]
    return Filtration(M, 0, tuple(reversed(chain)))


def is_polystable(M: Representation, theta, cap: int = SUBSPACE_CAP, samples: int = 64, seed=0) -> bool | None:
    if not check_semistable_oracle(M, theta, cap).is_semistable:
        return False
    return is_isomorphic(M, gr(jh_filtration(M, theta, cap)), samples=samples, seed=seed).verdict


# -------------------------------------------------------------- separation


@dataclass(frozen=True)
class Separation:
    test_rep: Representation | None
    m: int | None
    samples_used: int

    @property
    def found(self) -> bool:
        return self.test_rep is not None


def separating_semi_invariant(M0: Representation, others, theta, samples: int = 100, seed=0,
                              m_max: int | None = None, cap: int = SUBSPACE_CAP) -> Separation:
    """Random N of dimension m*beta with Hom(M0, N) != 0 and Hom(M, N) = 0 for every other M."""
    others = list(others)
    Q, F = M0.quiver, M0.field
    theta = Q.check_vector(theta, "theta")
    beta = beta_of(Q, theta)
    if not beta.is_dimension_vector:
        raise StabilityError(f"beta = {beta.vector} is not a dimension vector")
    for M in [M0] + others:
        if M.quiver != Q or M.field != F:
            raise StabilityError("all inputs must share quiver and field")
        _require_balanced(M, theta)
        if F.is_finite and check_semistable_oracle(M, theta, cap).status != "stable":
            raise StabilityError(f"input of dimension {M.dims} is not stable")
    if m_max is None:
        biggest = tuple(max(M.dims[i] for M in [M0] + others) for i in Q.vertices)
        m_max = (effective_m(Q, biggest) if any(biggest) else 1) + 2
    stream = as_stream(seed, "separating_semi_invariant")
    for k in range(samples):
        m = k % m_max + 1
        N = random_rep(Q, tuple(m * b for b in beta.vector), F, stream.child(k))
        if hom_dim(M0, N) != 0 and all(hom_dim(M, N) == 0 for M in others):
            return Separation(N, m, k + 1)
    return Separation(None, None, samples)
