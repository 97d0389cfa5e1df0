"""Table-driven arithmetic in GF(p^m) for odd primes p.

Elements are plain ints. The index of an element is its coefficient vector
in the polynomial basis read as a base-p number, constant coefficient as the
least significant digit, so 0 and 1 are the additive and multiplicative
identities and the integer k < p names the prime-field constant k.

Multiplication goes through discrete log tables for a fixed primitive
element; addition goes through a Zech logarithm table, so every field
operation is a handful of list lookups.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DivisionByZeroError,
    EvenCharacteristicError,
    FieldTooLargeError,
    InvalidSubfieldDegreeError,
    NotPrimeError,
)

Elem = int

DEFAULT_SIZE_CAP = 1 << 22
SIZE_CAP_ENV = "BCTFORGE_SIZE_CAP"


def default_size_cap() -> int:
    """Field size cap, overridable through ``BCTFORGE_SIZE_CAP``."""
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SIZE_CAP
    return int(raw)


# ---------------------------------------------------------------------------
# integer helpers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n is at most a few million here)."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k and p prime, or None."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) != 1:
        return None
    (p, k), = fac.items()
    return p, k


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists with the constant term first

def _poly_rem(f: list[int], g: tuple[int, ...], p: int) -> list[int]:
    """Remainder of f modulo the monic polynomial g."""
    r = list(f)
    dg = len(g) - 1
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            shift = i - dg
            for j in range(dg + 1):
                r[shift + j] = (r[shift + j] - c * g[j]) % p
    del r[dg:]
    return r


def _poly_mulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_rem(prod, mod, p)


@lru_cache(maxsize=None)
def monic_irreducibles(p: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All monic irreducible polynomials of degree k over GF(p), in search order."""
    return tuple(f for f in _monic_polys(p, k) if _is_irreducible(f, p))


def _monic_polys(p: int, k: int):
    # product() varies the last position fastest, so this is lexicographic
    # order on the coefficient vector read constant term first.
    for low in itertools.product(range(p), repeat=k):
        yield low + (1,)


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    m = len(f) - 1
    if m <= 1:
        return m == 1
    for k in range(1, m // 2 + 1):
        for g in monic_irreducibles(p, k):
            if not any(_poly_rem(list(f), g, p)):
                return False
    return True


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (constant first)."""
    for f in _monic_polys(p, m):
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.m


class FieldCtx:
    """A fully tabulated finite field GF(p^m).

    Immutable after construction. Use :func:`build_field` rather than calling
    the constructor directly.
    """

    def __init__(self, spec: FieldSpec, generator: Elem,
                 exp_table: tuple[int, ...], log_table: tuple[int, ...],
                 zech_table: tuple[int, ...]):
        self.spec = spec
        self.p = spec.p
        self.m = spec.m
        self.order = spec.order
        self.generator = generator
        self.exp_table = exp_table
        self.log_table = log_table
        self._zech = zech_table
        self._n = self.order - 1
        self._half = self._n // 2
        self.minus_one = exp_table[self._half]

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.p}^{self.m}), modulus={list(self.spec.modulus)}, generator={self.generator})"

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    # -- representation --------------------------------------------------

    def element(self, k: int) -> Elem:
        """Image of the integer k in the prime field."""
        return k % self.p

    def to_coeffs(self, x: Elem) -> list[int]:
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs) -> Elem:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + (c % self.p)
        return x

    # -- additive structure ---------------------------------------------

    def add(self, a: Elem, b: Elem) -> Elem:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log_table[a]
        k = self.log_table[b] - la
        if k < 0:
            k += self._n
        z = self._zech[k]
        if z < 0:
            return 0
        z += la
        if z >= self._n:
            z -= self._n
        return self.exp_table[z]

    def neg(self, a: Elem) -> Elem:
        if a == 0:
            return 0
        k = self.log_table[a] + self._half
        if k >= self._n:
            k -= self._n
        return self.exp_table[k]

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    # -- multiplicative structure ---------------------------------------

    def mul(self, a: Elem, b: Elem) -> Elem:
        if a == 0 or b == 0:
            return 0
        k = self.log_table[a] + self.log_table[b]
        if k >= self._n:
            k -= self._n
        return self.exp_table[k]

    def inv(self, a: Elem) -> Elem:
        if a == 0:
            raise DivisionByZeroError("0 has no multiplicative inverse")
        return self.exp_table[-self.log_table[a] % self._n]

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def pow(self, a: Elem, e: int) -> Elem:
        """a**e, with 0**0 == 1. Negative e is allowed for nonzero a."""
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise DivisionByZeroError("0 raised to a negative power")
            return 0
        return self.exp_table[(self.log_table[a] * e) % self._n]

    def log(self, a: Elem) -> int:
        if a == 0:
            raise DivisionByZeroError("log of 0")
        return self.log_table[a]

    # -- Frobenius, subfields, squares ----------------------------------

    def frobenius(self, x: Elem, k: int = 1) -> Elem:
        """x**(p**k)."""
        return self.pow(x, self.p ** k)

    def is_in_subfield(self, x: Elem, k: int) -> bool:
        if k <= 0 or self.m % k:
            raise InvalidSubfieldDegreeError(f"{k} does not divide extension degree {self.m}")
        return self.frobenius(x, k) == x

    def subfield_elements(self, k: int) -> list[Elem]:
        """Elements of GF(p^k), ascending by index."""
        if k <= 0 or self.m % k:
            raise InvalidSubfieldDegreeError(f"{k} does not divide extension degree {self.m}")
        # GF(p^k)* is the subgroup generated by g^((p^m-1)/(p^k-1))
        step = self._n // (self.p ** k - 1)
        return sorted([0] + [self.exp_table[i] for i in range(0, self._n, step)])

    def chi(self, x: Elem) -> int:
        """Quadratic character; chi(0) = 0."""
        if x == 0:
            return 0
        return -1 if self.log_table[x] & 1 else 1

    def sqrt(self, x: Elem) -> Elem | None:
        """Square root with the smaller index of the two, or None for nonsquares."""
        if x == 0:
            return 0
        lx = self.log_table[x]
        if lx & 1:
            return None
        r = self.exp_table[lx // 2]
        return min(r, self.neg(r))


def build_field(p: int, m: int = 1, size_cap: int | None = None) -> FieldCtx:
    """Construct GF(p^m) deterministically.

    The modulus is the lexicographically smallest monic irreducible polynomial
    (coefficients read constant term first) and the generator is the
    primitive element of smallest index.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristicError("characteristic 2 is not supported")
    if m < 1:
        raise ValueError(f"extension degree must be positive, got {m}")
    cap = default_size_cap() if size_cap is None else size_cap
    order = p ** m
    if order > cap:
        raise FieldTooLargeError(f"GF({p}^{m}) has {order} elements, cap is {cap}")

    modulus = canonical_modulus(p, m)
    n = order - 1
    prime_divisors = sorted(factorize(n))

    def coeffs(x):
        out = []
        for _ in range(m):
            x, r = divmod(x, p)
            out.append(r)
        return out

    def index(c):
        x = 0
        for v in reversed(c):
            x = x * p + v
        return x

    def power(c, e):
        result = [1] + [0] * (m - 1)
        base = c
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, modulus, p)
            base = _poly_mulmod(base, base, modulus, p)
            e >>= 1
        return result

    one = [1] + [0] * (m - 1)
    generator = None
    for cand in range(1, order):
        c = coeffs(cand)
        if all(power(c, n // r) != one for r in prime_divisors):
            generator = cand
            break
    assert generator is not None

    g = coeffs(generator)
    exp_table = [0] * n
    log_table = [-1] * order
    cur = one
    for k in range(n):
        idx = index(cur)
        exp_table[k] = idx
        log_table[idx] = k
        cur = _poly_mulmod(cur, g, modulus, p)

    # zech[k] = log(1 + g^k), -1 where 1 + g^k = 0
    zech = [0] * n
    for k in range(n):
        x = exp_table[k]
        c0 = x % p
        y = x - c0 + (c0 + 1) % p
        zech[k] = log_table[y] if y else -1

    return FieldCtx(FieldSpec(p, m, modulus), generator,
                    tuple(exp_table), tuple(log_table), tuple(zech))
