"""Exact fields: the rationals, prime fields, extension fields F_{p^k} and
rational-function fields k(t), together with the t-adic valuation on k(t).

Field objects carry the arithmetic; elements are plain hashable values
(``Fraction``, ``int``, coefficient tuples, ``RatFun``) in a canonical form so
that ``==`` is field equality.

Spec strings: ``rat``, ``fq:<p>``, ``fq:<p>^<k>`` (optionally
``fq:<p>^<k>:<modulus in x>``), ``ratfun:<base spec>``.
"""

from __future__ import annotations

import ast
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys

INFINITY = math.inf


class FieldError(ValueError):
    pass


class Field:
    """Shared behaviour; subclasses provide the primitive operations."""

    order: int | None = None
    characteristic: int = 0
    spec: str

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def embed(self, a, source: "Field"):
        """Coerce an element of ``source`` (this field or a subfield) into self."""
        if source == self:
            return a
        raise FieldError(f"cannot embed {source.spec} into {self.spec}")

    def elements(self):
        raise FieldError(f"cannot enumerate the infinite field {self.spec}")

    def parse(self, text) -> object:
        if isinstance(text, int) and not isinstance(text, bool):
            return self.from_int(text)
        if not isinstance(text, str):
            raise FieldError(f"cannot parse {text!r} as an element of {self.spec}")
        src = text.strip().replace("^", "**")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise FieldError(f"malformed element {text!r}") from exc
        return _evaluate(tree.body, self, text)

    def generator(self, name: str):
        raise FieldError(f"unknown symbol {name!r} in {self.spec}")

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<field {self.spec}>"


def _evaluate(node, F: Field, text: str):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return F.from_int(node.value)
    if isinstance(node, ast.Name):
        return F.generator(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _evaluate(node.operand, F, text)
        return F.neg(val) if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise FieldError(f"exponent must be an integer literal in {text!r}")
            return F.power(_evaluate(node.left, F, text), node.right.value)
        a = _evaluate(node.left, F, text)
        b = _evaluate(node.right, F, text)
        if isinstance(node.op, ast.Add):
            return F.add(a, b)
        if isinstance(node.op, ast.Sub):
            return F.sub(a, b)
        if isinstance(node.op, ast.Mult):
            return F.mul(a, b)
        if isinstance(node.op, ast.Div):
            if F.is_zero(b):
                raise FieldError(f"division by zero in {text!r}")
            return F.div(a, b)
    raise FieldError(f"unsupported syntax in element {text!r}")


class Rationals(Field):
    spec = "rat"
    zero = Fraction(0)
    one = Fraction(1)
    sample_height = 10

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def div(self, a, b):
        return Fraction(a) / b

    def from_int(self, n: int):
        return Fraction(n)

    def format(self, a) -> str:
        return str(a)

    def sample(self, rng):
        h = self.sample_height
        num = rng.integers(2 * h + 1) - h
        den = rng.integers(h) + 1
        return Fraction(num, den)


class PrimeField(Field):
    is_prime_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.characteristic = p
        self.spec = f"fq:{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def format(self, a) -> str:
        return str(a)

    def sample(self, rng):
        return rng.integers(self.p)

    def elements(self):
        return list(range(self.p))


def _poly_mod_p(coeffs, p):
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _is_irreducible(modulus: tuple, p: int) -> bool:
    k = len(modulus) - 1
    Fp = PrimeField(p)
    for deg in range(1, k // 2 + 1):
        for lower in itertools.product(range(p), repeat=deg):
            cand = tuple(lower) + (1,)
            if not polys.divmod_(Fp, modulus, cand)[1]:
                return False
    return True


def default_modulus(p: int, k: int) -> tuple:
    """First monic irreducible of degree k, ordering lower coefficients as base-p digits."""
    for code in range(p ** k):
        lower = [(code // p ** i) % p for i in range(k)]
        cand = tuple(lower) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


class ExtensionField(Field):
    """F_p[x]/(modulus); elements are trimmed coefficient tuples (lowest first)."""

    def __init__(self, p: int, modulus: tuple):
        base = PrimeField(p)
        modulus = _poly_mod_p(modulus, p)
        if len(modulus) < 3 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree >= 2")
        if not _is_irreducible(modulus, p):
            raise FieldError(f"modulus {polys.fmt(base, modulus, 'x')} is reducible over F_{p}")
        self.base = base
        self.p = p
        self.k = len(modulus) - 1
        self.modulus = modulus
        self.order = p ** self.k
        self.characteristic = p
        self.zero = ()
        self.one = (1,)
        spec = f"fq:{p}^{self.k}"
        if modulus != default_modulus(p, self.k):
            spec += ":" + polys.fmt(base, modulus, "x")
        self.spec = spec

    def _reduce(self, coeffs):
        c = list(coeffs)
        p, k, mod = self.p, self.k, self.modulus
        for i in range(len(c) - 1, k - 1, -1):
            lead = c[i] % p
            if lead:
                for j in range(k + 1):
                    c[i - k + j] -= lead * mod[j]
        return _poly_mod_p(c[:k], p)

    def add(self, a, b):
        n = max(len(a), len(b))
        return _poly_mod_p([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], self.p)

    def neg(self, a):
        return tuple((-c) % self.p for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._reduce(out)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self.power(a, self.order - 2)

    def from_int(self, n: int):
        return _poly_mod_p([n], self.p)

    def generator(self, name: str):
        if name == "x":
            return self._reduce([0, 1])
        return super().generator(name)

    def format(self, a) -> str:
        return polys.fmt(self.base, a, "x")

    def sample(self, rng):
        return _poly_mod_p([rng.integers(self.p) for _ in range(self.k)], self.p)

    def elements(self):
        return [_poly_mod_p(c[::-1], self.p) for c in itertools.product(range(self.p), repeat=self.k)]

    def embed(self, a, source):
        if isinstance(source, PrimeField) and source.p == self.p:
            return self.from_int(a)
        return super().embed(a, source)


@dataclass(frozen=True)
class RatFun:
    """Reduced fraction num/den of polynomials; den is monic."""

    num: tuple
    den: tuple


class RationalFunctionField(Field):
    """k(t) with the t-adic valuation; ``R = k[t]_(t)`` is its valuation ring."""

    def __init__(self, base: Field):
        if isinstance(base, RationalFunctionField):
            raise FieldError("nested rational function fields are not supported")
        self.base = base
        self.characteristic = base.characteristic
        self.spec = f"ratfun:{base.spec}"
        self.zero = RatFun((), (base.one,))
        self.one = RatFun((base.one,), (base.one,))

    def _make(self, num, den):
        B = self.base
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = polys.gcd(B, num, den)
        if len(g) > 1:
            num = polys.exact_div(B, num, g)
            den = polys.exact_div(B, den, g)
        lead = B.inv(den[-1])
        return RatFun(polys.scale(B, lead, num), polys.scale(B, lead, den))

    def add(self, a, b):
        B = self.base
        if a.den == b.den:
            return self._make(polys.add(B, a.num, b.num), a.den)
        return self._make(
            polys.add(B, polys.mul(B, a.num, b.den), polys.mul(B, b.num, a.den)),
            polys.mul(B, a.den, b.den),
        )

    def neg(self, a):
        return RatFun(polys.neg(self.base, a.num), a.den)

    def mul(self, a, b):
        B = self.base
        return self._make(polys.mul(B, a.num, b.num), polys.mul(B, a.den, b.den))

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError("inverse of zero")
        return self._make(a.den, a.num)

    def from_int(self, n: int):
        return self.constant(self.base.from_int(n))

    def constant(self, c):
        if self.base.is_zero(c):
            return self.zero
        return RatFun((c,), (self.base.one,))

    def from_poly(self, num, den=None):
        B = self.base
        return self._make(polys.trim(B, num), polys.trim(B, den) if den is not None else (B.one,))

    def generator(self, name: str):
        if name == "t":
            return RatFun((self.base.zero, self.base.one), (self.base.one,))
        return self.constant(self.base.generator(name))

    def embed(self, a, source):
        if source == self:
            return a
        if source == self.base:
            return self.constant(a)
        return self.constant(self.base.embed(a, source))

    def format(self, a) -> str:
        B = self.base
        num = polys.fmt(B, a.num, "t")
        if a.den == (B.one,):
            return num
        den = polys.fmt(B, a.den, "t")
        if not _simple(num):
            num = f"({num})"
        if not _simple(den):
            den = f"({den})"
        return f"{num}/{den}"

    def sample(self, rng):
        B = self.base
        num = polys.trim(B, [B.sample(rng) for _ in range(3)])
        if rng.integers(2):
            den = (B.sample(rng), B.one)
        else:
            den = (B.one,)
        return self._make(num, den)

    # valuation ring R = k[t]_(t)

    def valuation(self, a):
        """t-adic valuation; ``math.inf`` for zero."""
        if not a.num:
            return INFINITY
        B = self.base
        return polys.order(B, a.num) - polys.order(B, a.den)

    def is_integral(self, a) -> bool:
        return self.valuation(a) >= 0

    def reduce(self, a):
        """Residue map R -> k (evaluation at t = 0)."""
        v = self.valuation(a)
        if v < 0:
            raise FieldError(f"{self.format(a)} is not integral (valuation {v})")
        if v > 0:
            return self.base.zero
        return self.base.div(a.num[0], a.den[0])

    def t_power(self, k: int):
        t = self.generator("t")
        return self.power(t, k)


def _simple(s: str) -> bool:
    return all(ch.isalnum() or ch in "^*" for ch in s)


@functools.lru_cache(maxsize=None)
def field_from_spec(spec: str) -> Field:
    spec = spec.strip()
    if spec == "rat":
        return Rationals()
    if spec.startswith("ratfun:"):
        return RationalFunctionField(field_from_spec(spec[len("ratfun:"):]))
    if spec.startswith("fq:"):
        body = spec[3:]
        modulus_text = None
        if ":" in body:
            body, modulus_text = body.split(":", 1)
        try:
            if "^" in body:
                p_text, k_text = body.split("^", 1)
                p, k = int(p_text), int(k_text)
            else:
                p, k = int(body), 1
        except ValueError as exc:
            raise FieldError(f"malformed field spec {spec!r}") from exc
        if k == 1:
            if modulus_text is not None:
                raise FieldError("a modulus is only meaningful for k >= 2")
            return PrimeField(p)
        if k < 1:
            raise FieldError(f"malformed field spec {spec!r}")
        if modulus_text is None:
            return ExtensionField(p, default_modulus(p, k))
        modulus = _parse_poly_in_x(modulus_text, p)
        if len(modulus) - 1 != k:
            raise FieldError(f"modulus degree does not match k={k}")
        return ExtensionField(p, modulus)
    raise FieldError(f"unknown field spec {spec!r}")


def _parse_poly_in_x(text: str, p: int) -> tuple:
    # Evaluate in the polynomial ring F_p[x] by working in a large enough
    # rational function field in the variable named x.
    class _PolyRing(RationalFunctionField):
        def generator(self, name):
            if name == "x":
                return super().generator("t")
            raise FieldError(f"unknown symbol {name!r} in modulus")

    ring = _PolyRing(PrimeField(p))
    val = ring.parse(text)
    if val.den != (1,):
        raise FieldError("modulus must be a polynomial")
    return val.num
