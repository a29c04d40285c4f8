"""Certified bounds that depend only on dimension vectors.

The smallest eigenvalue of the symmetrized Euler matrix is isolated exactly:
the characteristic polynomial of ``2B`` (an integer matrix) is computed with
rational arithmetic, made squarefree, and its smallest real root bracketed by
Sturm-sequence bisection.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .quiver import Quiver

SHARPENED_CAP = 10**7


@dataclass(frozen=True)
class LambdaBound:
    """Rational interval ``[lower, upper]`` containing lambda."""

    lower: Fraction
    upper: Fraction

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, x) -> bool:
        return self.lower <= x <= self.upper


# ------------------------------------------------------- integer polynomials
# coefficient lists, highest degree first


def charpoly(M) -> list[int]:
    """Characteristic polynomial ``det(xI - M)`` of an integer matrix (Faddeev-LeVerrier)."""
    n = len(M)
    Mf = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M (M_{k-1} + c_{k-1} I)
        prev = [[Mk[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(Mf[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(Mk[i][i] for i in range(n)) / k)
    out = [int(c) for c in coeffs]
    assert all(c == o for c, o in zip(coeffs, out)), "characteristic polynomial is not integral"
    return out


def _peval(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def _pderiv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def _ptrim(p):
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _prem(a, b):
    a = [Fraction(c) for c in a]
    while len(a) >= len(b) and a:
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = _ptrim(a)
    return a


def _pquo(a, b):
    a = [Fraction(c) for c in a]
    q = []
    while len(a) >= len(b):
        f = a[0] / b[0]
        q.append(f)
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = a[1:]
    return q


def _pgcd(a, b):
    while b:
        a, b = b, _prem(a, b)
    return [c / a[0] for c in a]


def squarefree(p):
    d = _pderiv(p)
    if not d:
        return [Fraction(c) for c in p]
    return _pquo(p, _pgcd(p, d))


def sturm_sequence(p):
    seq = [p, _pderiv(p)]
    while seq[-1]:
        r = _prem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(seq, x) -> int:
    signs = [v for v in (_peval(s, x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def count_roots(seq, a, b) -> int:
    """Distinct roots of the squarefree seq[0] in ``(a, b]``."""
    return _variations(seq, a) - _variations(seq, b)


def min_eigenvalue_interval(M, width: Fraction):
    """Bracket the smallest eigenvalue of a symmetric integer matrix.

    Returns ``(lo, hi, exact)`` with the eigenvalue in ``(lo, hi]``, or
    ``(r, r, True)`` when it is an integer root found exactly.
    """
    p = squarefree(charpoly(M))
    seq = sturm_sequence(p)
    radius = max((sum(abs(x) for x in row) for row in M), default=0)
    lo, hi = Fraction(-radius - 1), Fraction(radius)
    while True:
        # an integer in (lo, hi] that is a root and the only root up to itself
        for k in range(math.floor(lo) + 1, math.floor(hi) + 1):
            if _peval(p, k) == 0 and count_roots(seq, lo, k) == 1:
                return Fraction(k), Fraction(k), True
            if count_roots(seq, lo, k) >= 1:
                break
        if hi - lo <= width:
            return lo, hi, False
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid


def lambda_bound(Q: Quiver, width=Fraction(1, 1000)) -> LambdaBound:
    """Certified interval for minus the smallest eigenvalue of the Tits matrix."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    A = Q.euler_matrix
    n = Q.vertex_count
    twice_b = [[A[i][j] + A[j][i] for j in range(n)] for i in range(n)]
    lo, hi, exact = min_eigenvalue_interval(twice_b, 2 * width)
    if exact:
        return LambdaBound(-lo / 2, -lo / 2)
    return LambdaBound(-hi / 2, -lo / 2)


def _norm2(d) -> int:
    return sum(x * x for x in d)


def effective_m(Q: Quiver, d) -> int:
    """Smallest positive m exceeding lambda times the squared norm of d."""
    d = Q.check_vector(d)
    if any(x < 0 for x in d) or not any(d):
        raise ValueError("d must be a nonzero dimension vector")
    n2 = _norm2(d)
    width = Fraction(1, 8 * n2)
    while True:
        lb = lambda_bound(Q, width)
        if lb.upper <= 0:
            return 1
        if lb.exact or (lb.lower > 0 and lb.width * n2 < 1 and math.floor(lb.lower * n2) == math.floor(lb.upper * n2)):
            return max(1, math.floor(lb.upper * n2) + 1)
        width /= 16
        if width < Fraction(1, 2**64):
            # the bracket straddles an integer multiple; upper is still a certified bound
            return max(1, math.floor(lb.upper * n2) + 1)


def sharpened_m(Q: Quiver, d, beta, epsilon=None, cap: int = SHARPENED_CAP) -> int:
    """Smallest positive m beating every ratio over qualifying sub-dimension vectors."""
    d = Q.check_vector(d)
    beta = Q.check_vector(beta, "beta")
    epsilon = Q.check_vector(epsilon if epsilon is not None else (0,) * Q.vertex_count, "epsilon")
    if any(x < 0 for x in d) or any(x < 0 for x in epsilon):
        raise ValueError("d and epsilon must be nonnegative")
    if math.prod(x + 1 for x in d) > cap:
        raise ValueError(f"sub-dimension enumeration exceeds the cap {cap}")
    best = None
    for gamma in itertools.product(*(range(x + 1) for x in d)):
        if not any(gamma) or gamma == d:
            continue
        denom = Q.euler(gamma, beta)
        if denom >= 0:
            continue
        ratio = Fraction(Q.euler(gamma, gamma) - Q.euler(gamma, epsilon), denom)
        if best is None or ratio > best:
            best = ratio
    if best is None:
        return 1
    return max(1, math.floor(best) + 1)


def codim_bounds(Q: Quiver, d_sub, d_quot) -> tuple[int, int, int]:
    d_sub = Q.check_vector(d_sub)
    d_quot = Q.check_vector(d_quot)
    d = tuple(a + b for a, b in zip(d_sub, d_quot))
    return (-Q.euler(d_sub, d_quot), 1 - Q.euler(d_sub, d), 1 - Q.euler(d, d_quot))
