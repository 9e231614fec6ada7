"""Univariate polynomials over GF(q): coefficient lists, low degree first.

Enough machinery to factor characteristic polynomials for module chopping.
"""

from __future__ import annotations

import random

from .fields import FiniteField


def trim(f):
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f) -> int:
    return len(trim(f)) - 1


def add(f, g, F: FiniteField):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return trim(F.add(a, b) for a, b in zip(f, g))


def sub(f, g, F: FiniteField):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return trim(F.sub(a, b) for a, b in zip(f, g))


def mul(f, g, F: FiniteField):
    f, g = trim(f), trim(g)
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(f, g, F: FiniteField):
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(g[-1])
    quo = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g):
        c = F.mul(r[-1], inv)
        shift = len(r) - len(g)
        quo[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b))
        r = trim(r)
    return trim(quo), r


def rem(f, g, F):
    return divmod_(f, g, F)[1]


def monic(f, F: FiniteField):
    f = trim(f)
    if not f:
        return f
    inv = F.inv(f[-1])
    return [F.mul(inv, c) for c in f]


def gcd(f, g, F: FiniteField):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, rem(f, g, F)
    return monic(f, F)


def powmod(f, e: int, mod, F: FiniteField):
    result, base = [1], rem(f, mod, F)
    while e:
        if e & 1:
            result = rem(mul(result, base, F), mod, F)
        base = rem(mul(base, base, F), mod, F)
        e >>= 1
    return result


def derivative(f, F: FiniteField):
    return trim(F.mul(F.from_int(i), c) for i, c in enumerate(f) if i > 0)


def pth_root(f, F: FiniteField):
    """g with g^p = f when f' = 0 (Frobenius is bijective on GF(q))."""
    p, q = F.p, F.q
    out = []
    for i in range(0, len(f), p):
        # c^(q/p) is the p-th root of c
        out.append(F.pow(f[i], q // p))
    return trim(out)


def squarefree_decomposition(f, F: FiniteField):
    """List of (g, multiplicity) with g squarefree, monic, pairwise coprime."""
    f = monic(f, F)
    if len(f) <= 1:
        return []
    out = []
    d = derivative(f, F)
    if not d:
        return [(g, k * F.p) for g, k in squarefree_decomposition(pth_root(f, F), F)]
    c = gcd(f, d, F)
    w = divmod_(f, c, F)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, F)
        z = divmod_(w, y, F)[0]
        if len(z) > 1:
            out.append((monic(z, F), i))
        i += 1
        w = y
        c = divmod_(c, y, F)[0]
    if len(c) > 1:
        out += [(g, k * F.p) for g, k in squarefree_decomposition(pth_root(c, F), F)]
    return out


def distinct_degree(f, F: FiniteField):
    """Split a squarefree monic f into (product of irreducibles of degree d, d)."""
    out = []
    h = [0, 1]
    d = 0
    f = monic(f, F)
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, F.q, f, F)
        g = gcd(f, sub(h, [0, 1], F), F)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, F)[0]
            h = rem(h, f, F)
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def equal_degree(f, d: int, F: FiniteField, rng: random.Random):
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    f = monic(f, F)
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(F.q) for _ in range(n)])
        if degree(a) < 1:
            continue
        if F.p == 2:
            # trace map x + x^2 + ... + x^(2^(md - 1))
            t, s = a, a
            for _ in range(F.m * d - 1):
                s = rem(mul(s, s, F), f, F)
                t = add(t, s, F)
            g = gcd(f, t, F)
        else:
            b = powmod(a, (F.q**d - 1) // 2, f, F)
            g = gcd(f, sub(b, [1], F), F)
        if 0 < degree(g) < n:
            return equal_degree(g, d, F, rng) + equal_degree(divmod_(f, g, F)[0], d, F, rng)


def factor(f, F: FiniteField, seed: int = 0):
    """Monic irreducible factors with multiplicity, sorted by (degree, coefficients)."""
    rng = random.Random(seed)
    out = []
    for g, k in squarefree_decomposition(f, F):
        for h, d in distinct_degree(g, F):
            for irr in equal_degree(h, d, F, rng):
                out.append((irr, k))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def is_irreducible(f, F: FiniteField) -> bool:
    fac = factor(f, F)
    return len(fac) == 1 and fac[0][1] == 1
