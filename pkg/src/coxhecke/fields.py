"""Finite fields GF(p^m) with vectorised arithmetic on integer encodings.

An element of GF(p^m) is the integer sum(c_i * p**i) for the residue class
of sum(c_i * x**i) modulo the field's defining polynomial.  Prime fields use
plain modular arithmetic; extension fields use discrete log tables, which
caps their size at ``MAX_TABLE_FIELD``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import UsageError

MAX_TABLE_FIELD = 1 << 22


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in (Z/n)^x; raises if ``a`` is not a unit."""
    from math import gcd

    a %= n
    if gcd(a, n) != 1:
        raise UsageError(f"{a} is not a unit modulo {n}")
    k, x = 1, a
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


# -- polynomials over F_p as coefficient lists, low degree first --------------

def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmulmod(f, g, mod, p):
    prod = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] = (prod[i + j] + a * b) % p
    return _prem(prod, mod, p)


def _prem(f, mod, p):
    f = list(f)
    dm = len(mod) - 1
    lead_inv = pow(mod[-1], -1, p)
    while len(_ptrim(f)) - 1 >= dm:
        c = f[-1] * lead_inv % p
        shift = len(f) - 1 - dm
        for i, b in enumerate(mod):
            f[shift + i] = (f[shift + i] - c * b) % p
    return f


def _psub(f, g, p):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _ptrim([(a - b) % p for a, b in zip(f, g)])


def _pgcd(f, g, p):
    f, g = _ptrim(list(f)), _ptrim(list(g))
    while g:
        f, g = g, _ptrim(_prem(f, g, p))
    return f


def _ppowmod(f, e, mod, p):
    result, base = [1], _prem(f, mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible_fp(f, p):
    """Rabin's test for a monic polynomial over F_p."""
    m = len(f) - 1
    x = [0, 1]
    for r in prime_factors(m):
        h = _ppowmod(x, p ** (m // r), f, p)
        diff = _psub(h, x, p)
        if len(_pgcd(f, diff, p)) != 1:
            return False
    h = _ppowmod(x, p**m, f, p)
    return not _psub(h, x, p)


def conway_free_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, ordering candidates by sum c_i p^i."""
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        coeffs = [(code // p**i) % p for i in range(m)] + [1]
        if coeffs[0] == 0:
            continue
        if _is_irreducible_fp(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(p^m); all operations accept ints or integer numpy arrays."""

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise UsageError(f"field characteristic {p} is not prime")
        if m < 1:
            raise UsageError("field degree must be positive")
        self.p = p
        self.m = m
        self.q = p**m
        if m > 1 and self.q > MAX_TABLE_FIELD:
            raise UsageError(f"extension field of order {self.q} exceeds table limit")
        self.modulus = conway_free_modulus(p, m)
        if m > 1:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    def descriptor(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # -- table construction for extension fields --------------------------
    def _poly_of(self, a: int):
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def _int_of(self, coeffs) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs[: self.m]))

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _pmulmod(self._poly_of(a), self._poly_of(b), list(self.modulus), self.p)
        return self._int_of(prod + [0] * self.m)

    def _build_tables(self):
        q, p = self.q, self.p
        facs = prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            # order test via repeated squaring on the slow path
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in facs):
                gen = g
                break
        self._gen = gen
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, gen)
        exp[q - 1 :] = exp[: q - 1]
        self._exp, self._log = exp, log
        self._pows = p ** np.arange(self.m, dtype=np.int64)

    def _slow_pow(self, a, e):
        r, b = 1, a
        while e:
            if e & 1:
                r = self._slow_mul(r, b)
            b = self._slow_mul(b, b)
            e >>= 1
        return r

    # -- arithmetic --------------------------------------------------------
    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pows) % self.p

    def _undigit(self, d):
        return (d * self._pows).sum(axis=-1)

    def _ret(self, x, like_scalar):
        return int(x) if like_scalar else x

    def add(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        if self.m == 1:
            r = (np.asarray(a, dtype=np.int64) + b) % self.p
        else:
            r = self._undigit((self._digits(a) + self._digits(b)) % self.p)
        return self._ret(r, scalar)

    def neg(self, a):
        scalar = np.ndim(a) == 0
        if self.m == 1:
            r = (-np.asarray(a, dtype=np.int64)) % self.p
        else:
            r = self._undigit((-self._digits(a)) % self.p)
        return self._ret(r, scalar)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            r = a * b % self.p
        else:
            la, lb = self._log[a], self._log[b]
            r = np.where((a == 0) | (b == 0), 0, self._exp[(la + lb) % (self.q - 1)])
        return self._ret(r, scalar)

    def inv(self, a):
        scalar = np.ndim(a) == 0
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            if scalar:
                return pow(int(a), -1, self.p)
            return np.vectorize(lambda x: pow(int(x), -1, self.p), otypes=[np.int64])(a)
        r = self._exp[(-self._log[a]) % (self.q - 1)]
        return self._ret(r, scalar)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        scalar = np.ndim(a) == 0
        if self.m == 1 and scalar:
            a = int(a) % self.p
            if e < 0:
                a, e = pow(a, -1, self.p), -e
            return pow(a, e, self.p)
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return np.vectorize(lambda x: self.pow(int(x), e), otypes=[np.int64])(a)
        if e < 0 and np.any(a == 0):
            raise ZeroDivisionError("negative power of zero")
        la = self._log[a]
        r = np.where(a == 0, 0 if e else 1, self._exp[(la * e) % (self.q - 1)])
        return self._ret(r, scalar)

    def from_int(self, n):
        """Image of an integer (or integer array) in the prime subfield."""
        if np.ndim(n) == 0:
            return int(n) % self.p
        return np.asarray(n, dtype=np.int64) % self.p

    def to_signed(self, a: int) -> int:
        """Symmetric integer lift of a prime-subfield element (for display)."""
        a = int(a)
        return a - self.p if a > self.p // 2 else a

    @property
    def generator(self) -> int:
        """Smallest encoding of a generator of the multiplicative group."""
        if self.m > 1:
            return self._gen
        return _prime_generator(self.p)

    def order(self, a) -> int:
        a = int(a)
        if a == 0:
            raise UsageError("zero has no multiplicative order")
        n = self.q - 1
        k = n
        for r in prime_factors(n):
            while k % r == 0 and self.pow(a, k // r) == 1:
                k //= r
        return k

    def root_of_unity(self, n: int) -> int:
        """g^((q-1)/n) for the canonical generator g."""
        if (self.q - 1) % n:
            raise UsageError(f"{self} has no primitive {n}-th root of unity")
        return self.pow(self.generator, (self.q - 1) // n)

    def is_square(self, a) -> bool:
        a = int(a)
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a):
        """Some square root, or None; brute force over the field (desk sizes)."""
        a = int(a)
        for x in range(self.q):
            if self.mul(x, x) == a:
                return x
        return None


@lru_cache(maxsize=None)
def _prime_generator(p: int) -> int:
    if p == 2:
        return 1
    facs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in facs):
            return g
    raise AssertionError


@lru_cache(maxsize=None)
def GF(p: int, m: int = 1) -> FiniteField:
    """Cached field constructor."""
    return FiniteField(p, m)
