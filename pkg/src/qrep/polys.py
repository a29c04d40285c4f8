"""Dense univariate polynomials over an exact field.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Coefficients are elements of
the field ``F`` passed to every function.
"""

from __future__ import annotations


def trim(F, coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and F.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def degree(p: tuple) -> int:
    """Degree, with ``-1`` for the zero polynomial."""
    return len(p) - 1


def order(F, p: tuple) -> int | None:
    """t-adic order: index of the lowest nonzero coefficient (None for zero)."""
    for i, c in enumerate(p):
        if not F.is_zero(c):
            return i
    return None


def add(F, p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else F.zero
        b = q[i] if i < len(q) else F.zero
        out.append(F.add(a, b))
    return trim(F, out)


def neg(F, p):
    return tuple(F.neg(c) for c in p)


def sub(F, p, q):
    return add(F, p, neg(F, q))


def scale(F, c, p):
    if F.is_zero(c):
        return ()
    return tuple(F.mul(c, a) for a in p)


def mul(F, p, q):
    if not p or not q:
        return ()
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if F.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def shift(F, p, k: int):
    """Multiply by ``t**k`` (k >= 0)."""
    if not p:
        return ()
    return (F.zero,) * k + tuple(p)


def divmod_(F, p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead_inv = F.inv(q[-1])
    quot = [F.zero] * max(len(p) - dq, 0)
    while len(rem) - 1 >= dq and rem:
        c = F.mul(rem[-1], lead_inv)
        k = len(rem) - 1 - dq
        quot[k] = c
        for j, b in enumerate(q):
            rem[k + j] = F.sub(rem[k + j], F.mul(c, b))
        rem = list(trim(F, rem))
    return trim(F, quot), trim(F, rem)


def exact_div(F, p, q):
    quot, rem = divmod_(F, p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def monic(F, p):
    if not p:
        return ()
    return scale(F, F.inv(p[-1]), p)


def gcd(F, p, q):
    """Monic greatest common divisor."""
    while q:
        p, q = q, divmod_(F, p, q)[1]
    return monic(F, p)


def evaluate(F, p, x):
    acc = F.zero
    for c in reversed(p):
        acc = F.add(F.mul(acc, x), c)
    return acc


def fmt(F, p, var: str) -> str:
    """Render as a sum of terms, highest degree first."""
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if F.is_zero(c):
            continue
        cs = F.format(c)
        negative = cs.startswith("-") and _is_atomic(cs[1:])
        if negative:
            cs = cs[1:]
        if k == 0:
            body = cs
        else:
            mono = var if k == 1 else f"{var}^{k}"
            if cs == "1":
                body = mono
            elif _is_atomic(cs):
                body = f"{cs}*{mono}"
            else:
                body = f"({cs})*{mono}"
        if k == 0 and not _is_atomic(cs):
            body = f"({cs})"
        terms.append(("-" if negative else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


def _is_atomic(s: str) -> bool:
    return all(ch.isalnum() or ch == "^" for ch in s)
