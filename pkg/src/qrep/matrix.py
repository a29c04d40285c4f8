"""Exact matrices and the linear algebra every other module is built on.

Elimination strategy by field kind:

* prime fields: plain Gauss-Jordan on Python ints;
* rationals and k(t): fraction-free (Bareiss) elimination for ``rank`` and
  ``det`` after clearing row denominators, Gauss-Jordan for echelon bases;
* extension fields: plain Gauss-Jordan through the field interface.

Subspaces are always returned in canonical form: a column basis whose
transpose is in reduced row echelon form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .fields import Field, Rationals, RationalFunctionField


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class ExactMatrix:
    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeError(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, field: Field, rows, cols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def build(cls, field: Field, rows, cols: int | None = None) -> "ExactMatrix":
        """Like ``from_rows`` but parses ints and strings into field elements."""
        def coerce(a):
            return field.parse(a) if isinstance(a, (int, str)) and not isinstance(a, bool) else a
        return cls.from_rows(field, [[coerce(a) for a in r] for r in rows], cols)

    @classmethod
    def from_columns(cls, field: Field, columns, rows: int) -> "ExactMatrix":
        columns = [tuple(c) for c in columns]
        return cls.from_rows(field, [[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, rows, cols, tuple((field.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        return cls(field, n, n, tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, field: Field, n: int, c) -> "ExactMatrix":
        return cls(field, n, n, tuple(tuple(c if i == j else field.zero for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    T = property(transpose)

    def _check_field(self, other: "ExactMatrix"):
        if other.field != self.field:
            raise ShapeError(f"field mismatch: {self.field.spec} vs {other.field.spec}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        if getattr(F, "is_prime_field", False):
            p = F.p
            ocols = other.columns()
            out = [[sum(a * b for a, b in zip(row, col)) % p for col in ocols] for row in self.entries]
            return ExactMatrix.from_rows(F, out, other.cols)
        out = []
        ocols = other.columns()
        for row in self.entries:
            new = []
            for col in ocols:
                acc = F.zero
                for a, b in zip(row, col):
                    if not F.is_zero(a) and not F.is_zero(b):
                        acc = F.add(acc, F.mul(a, b))
                new.append(acc)
            out.append(new)
        return ExactMatrix.from_rows(F, out, other.cols)

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        F = self.field
        return ExactMatrix.from_rows(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        F = self.field
        return ExactMatrix.from_rows(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self):
        F = self.field
        return ExactMatrix.from_rows(F, [[F.neg(a) for a in r] for r in self.entries], self.cols)

    def scale(self, c) -> "ExactMatrix":
        F = self.field
        return ExactMatrix.from_rows(F, [[F.mul(c, a) for a in r] for r in self.entries], self.cols)

    def map(self, fn, field: Field) -> "ExactMatrix":
        return ExactMatrix.from_rows(field, [[fn(a) for a in r] for r in self.entries], self.cols)

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(a) for r in self.entries for a in r)

    def hstack(self, *others) -> "ExactMatrix":
        mats = (self,) + others
        for m in others:
            self._check_field(m)
            if m.rows != self.rows:
                raise ShapeError("hstack needs equal row counts")
        return ExactMatrix.from_rows(self.field, [sum((m.entries[i] for m in mats), ()) for i in range(self.rows)], sum(m.cols for m in mats))

    def vstack(self, *others) -> "ExactMatrix":
        mats = (self,) + others
        for m in others:
            self._check_field(m)
            if m.cols != self.cols:
                raise ShapeError("vstack needs equal column counts")
        return ExactMatrix.from_rows(self.field, [r for m in mats for r in m.entries], self.cols)

    def submatrix(self, rows, cols) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        return ExactMatrix.from_rows(self.field, [[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(a) for a in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.to_strings())
        return f"ExactMatrix<{self.field.spec} {self.rows}x{self.cols}>[{body}]"

    # linear algebra (module functions below do the work)

    def rank(self) -> int:
        return rank(self)

    def det(self):
        return det(self)

    def kernel(self) -> "ExactMatrix":
        return kernel(self)

    def image(self) -> "ExactMatrix":
        return image(self)


def block_diag(field: Field, blocks) -> ExactMatrix:
    blocks = list(blocks)
    R = sum(b.rows for b in blocks)
    C = sum(b.cols for b in blocks)
    out = [[field.zero] * C for _ in range(R)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return ExactMatrix.from_rows(field, out, C)


# ---------------------------------------------------------------- elimination


def rref_rows(F: Field, rows, ncols: int):
    """Reduced row echelon form of a list of rows. Returns (nonzero rows, pivots)."""
    M = [list(r) for r in rows]
    if getattr(F, "is_prime_field", False):
        return _rref_prime(F.p, M, ncols)
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not F.is_zero(M[i][c]):
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, a) for a in M[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _rref_prime(p: int, M, ncols: int):
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        prow = [(inv * a) % p for a in M[r]]
        M[r] = prow
        for i in range(nrows):
            f = M[i][c] % p
            if i != r and f:
                M[i] = [(a - f * b) % p for a, b in zip(M[i], prow)]
        pivots.append(c)
        r += 1
    return [[a % p for a in row] for row in M[:r]], pivots


def rref(A: ExactMatrix):
    rows, pivots = rref_rows(A.field, A.entries, A.cols)
    return ExactMatrix.from_rows(A.field, rows, A.cols), pivots


def _integral_rows(A: ExactMatrix):
    """Scale each row to clear denominators (Q -> Z, k(t) -> k[t]).

    Returns (ring ops, integral rows, list of row scale factors as field elements).
    """
    F = A.field
    if isinstance(F, Rationals):
        rows, scales = [], []
        for r in A.entries:
            den = 1
            for a in r:
                den = den * a.denominator // math.gcd(den, a.denominator)
            rows.append([int(a * den) for a in r])
            scales.append(Fraction(den))
        return _IntRing, rows, scales
    if isinstance(F, RationalFunctionField):
        B = F.base
        rows, scales = [], []
        for r in A.entries:
            den = (B.one,)
            for a in r:
                g = polys.gcd(B, den, a.den)
                den = polys.mul(B, den, polys.exact_div(B, a.den, g))
            rows.append([polys.mul(B, a.num, polys.exact_div(B, den, a.den)) for a in r])
            scales.append(F.from_poly(den))
        return _PolyRing(B), rows, scales
    return None, None, None


class _IntRing:
    zero = 0

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def cross(a, b, c, d):
        return a * b - c * d

    @staticmethod
    def exact_div(a, b):
        q, r = divmod(a, b)
        assert r == 0
        return q

    @staticmethod
    def neg(a):
        return -a


class _PolyRing:
    zero = ()

    def __init__(self, base):
        self.B = base

    @staticmethod
    def is_zero(a):
        return not a

    def cross(self, a, b, c, d):
        B = self.B
        return polys.sub(B, polys.mul(B, a, b), polys.mul(B, c, d))

    def exact_div(self, a, b):
        return polys.exact_div(self.B, a, b)

    def neg(self, a):
        return polys.neg(self.B, a)


def _bareiss(ring, M, ncols: int):
    """Fraction-free echelon form in place. Returns (rank, sign, last pivot)."""
    nrows = len(M)
    prev = None
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not ring.is_zero(M[i][c]):
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            sign = -sign
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                val = ring.cross(M[r][c], M[i][j], M[i][c], M[r][j])
                M[i][j] = val if prev is None else ring.exact_div(val, prev)
            M[i][c] = ring.zero
        prev = M[r][c]
        r += 1
    return r, sign, prev


def rank(A: ExactMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    ring, rows, _ = _integral_rows(A)
    if ring is not None:
        return _bareiss(ring, rows, A.cols)[0]
    return len(rref_rows(A.field, A.entries, A.cols)[1])


def det(A: ExactMatrix):
    if A.rows != A.cols:
        raise ShapeError(f"determinant of a non-square {A.rows}x{A.cols} matrix")
    F = A.field
    n = A.rows
    if n == 0:
        return F.one
    ring, rows, scales = _integral_rows(A)
    if ring is not None:
        r, sign, last = _bareiss(ring, rows, n)
        if r < n:
            return F.zero
        if isinstance(F, Rationals):
            val = Fraction(sign * last)
        else:
            val = F.from_poly(last if sign > 0 else polys.neg(F.base, last))
        for s in scales:
            val = F.div(val, s)
        return val
    if getattr(F, "is_prime_field", False):
        return _det_prime(F.p, [list(r) for r in A.entries])
    M = [list(r) for r in A.entries]
    result = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not F.is_zero(M[i][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = F.neg(result)
        result = F.mul(result, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(M[i][c]):
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[c])]
    return result


def _det_prime(p: int, M) -> int:
    n = len(M)
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = -result
        result = (result * M[c][c]) % p
        inv = pow(M[c][c], -1, p)
        for i in range(c + 1, n):
            f = (M[i][c] * inv) % p
            if f:
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[c])]
    return result % p


def canonical_basis(F: Field, vectors, dim: int) -> ExactMatrix:
    """Column basis of span(vectors) whose transpose is in RREF."""
    rows, _ = rref_rows(F, vectors, dim)
    return ExactMatrix.from_columns(F, rows, dim)


def kernel(A: ExactMatrix) -> ExactMatrix:
    """Canonical column basis of the null space of A (shape cols x k)."""
    F = A.field
    R, pivots = rref_rows(F, A.entries, A.cols)
    free = [j for j in range(A.cols) if j not in set(pivots)]
    vecs = []
    for j in free:
        v = [F.zero] * A.cols
        v[j] = F.one
        for k, pc in enumerate(pivots):
            v[pc] = F.neg(R[k][j])
        vecs.append(v)
    return canonical_basis(F, vecs, A.cols)


def image(A: ExactMatrix) -> ExactMatrix:
    """Canonical column basis of the column space of A."""
    return canonical_basis(A.field, A.columns(), A.rows)


def cokernel(A: ExactMatrix):
    """Quotient ``F^rows / im(A)`` with complement = non-pivot standard vectors.

    Returns ``(projection, section)`` with projection of shape (q x rows) and
    section of shape (rows x q), ``projection @ section = I`` and
    ``projection @ A = 0``.
    """
    F = A.field
    R, pivots = rref_rows(F, A.columns(), A.rows)
    return complement_maps(F, R, pivots, A.rows)


def complement_maps(F: Field, R, pivots, dim: int):
    """Projection/section for the quotient of F^dim by the row space of RREF ``R``."""
    pset = set(pivots)
    nonpiv = [j for j in range(dim) if j not in pset]
    proj_cols = []
    piv_row = {pc: k for k, pc in enumerate(pivots)}
    for i in range(dim):
        if i in pset:
            row = R[piv_row[i]]
            proj_cols.append([F.neg(row[j]) for j in nonpiv])
        else:
            proj_cols.append([F.one if j == i else F.zero for j in nonpiv])
    projection = ExactMatrix.from_columns(F, proj_cols, len(nonpiv)) if dim else ExactMatrix.zeros(F, 0, 0)
    section = ExactMatrix.from_columns(F, [[F.one if r == j else F.zero for r in range(dim)] for j in nonpiv], dim)
    return projection, section


def solve(A: ExactMatrix, B: ExactMatrix):
    """Return X with ``A @ X == B``, or None when the system is inconsistent."""
    if A.field != B.field:
        raise ShapeError("field mismatch")
    if A.rows != B.rows:
        raise ShapeError(f"cannot solve {A.shape} against {B.shape}")
    F = A.field
    aug = [list(a) + list(b) for a, b in zip(A.entries, B.entries)]
    R, pivots = rref_rows(F, aug, A.cols + B.cols)
    if any(pc >= A.cols for pc in pivots):
        return None
    X = [[F.zero] * B.cols for _ in range(A.cols)]
    for k, pc in enumerate(pivots):
        X[pc] = R[k][A.cols:]
    return ExactMatrix.from_rows(F, X, B.cols)


def inverse(A: ExactMatrix) -> ExactMatrix:
    if A.rows != A.cols:
        raise ShapeError("inverse of a non-square matrix")
    X = solve(A, ExactMatrix.identity(A.field, A.rows))
    if X is None:
        raise ZeroDivisionError("matrix is singular")
    return X


def in_span(F: Field, basis_rref, pivots, v) -> bool:
    """Whether vector v lies in the row space of an RREF basis."""
    v = list(v)
    for row, pc in zip(basis_rref, pivots):
        c = v[pc]
        if not F.is_zero(c):
            v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
    return all(F.is_zero(a) for a in v)
