"""Small finite fields GF(p^k) as addition/multiplication tables.

Element ``x`` in ``range(q)`` encodes the polynomial whose base-``p`` digits
are its coefficients (least significant digit = constant term).  Only meant
for the desk-scale fields the subspace generator needs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import NotPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``q == p**k`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _polymod(a: list[int], mod: list[int], p: int) -> list[int]:
    a = a[:]
    while len(a) >= len(mod):
        c = a[-1]
        if c:
            shift = len(a) - len(mod)
            for i, m in enumerate(mod):
                a[shift + i] = (a[shift + i] - c * m) % p
        a.pop()
    return a


def _irreducible(p: int, k: int) -> list[int]:
    """Lexicographically first monic irreducible polynomial of degree ``k``."""
    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        ok = True
        for d in range(1, k // 2 + 1):
            for dtail in product(range(p), repeat=d):
                div = list(dtail) + [1]
                if not any(_polymod(poly, div, p)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return poly
    raise AssertionError("no irreducible polynomial found")


class GF:
    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise NotPrime(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        p, k = self.p, self.k
        digits = [[(x // p**i) % p for i in range(k)] for x in range(q)]
        enc = lambda coeffs: sum(c * p**i for i, c in enumerate(coeffs))  # noqa: E731
        self.add = [[enc([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)] for x in range(q)]
        self.neg = [enc([(-a) % p for a in digits[x]]) for x in range(q)]
        if k == 1:
            self.mul = [[(x * y) % q for y in range(q)] for x in range(q)]
        else:
            mod = _irreducible(p, k)
            self.mul = [[0] * q for _ in range(q)]
            for x in range(q):
                for y in range(x, q):
                    prod = [0] * (2 * k - 1)
                    for i, a in enumerate(digits[x]):
                        if a:
                            for j, b in enumerate(digits[y]):
                                prod[i + j] = (prod[i + j] + a * b) % p
                    r = enc(_polymod(prod, mod, p))
                    self.mul[x][y] = self.mul[y][x] = r
        self.inv = [0] * q
        for x in range(1, q):
            self.inv[x] = next(y for y in range(1, q) if self.mul[x][y] == 1)

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
