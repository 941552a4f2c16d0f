"""Exact arithmetic over Z_n: factorization, natural maps, CRT, and square sets.

Everything here is exact integer work. ResidueSet is a bit-vector (one Python
int used as an n-bit mask), so membership is O(1) and unions/shifts are
word-parallel. Enumerations (units, squares) go through numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Set-based operations refuse moduli above this; size-only operations
# (size_squares and friends) have no such limit.
ENUMERATION_CAP = 2**31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """A modulus n >= 2. Z_1 is rejected: the constants over it are trivially 1."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"modulus must be an integer, got {self.n!r}")
        if self.n < 2:
            raise ValueError(f"modulus must be >= 2, got {self.n}")


@dataclass(frozen=True)
class Residue:
    """An element of Z_n, stored as its canonical representative in [0, n-1]."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.n:
            raise ValueError(
                f"residue value {self.value} out of range for modulus {self.modulus.n}"
            )


def residue(value: int, n: int | Modulus) -> Residue:
    """Build a Residue, reducing value mod n."""
    mod = n if isinstance(n, Modulus) else Modulus(n)
    return Residue(value % mod.n, mod)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ((p1, r1), ..., (pk, rk)) with p1 < p2 < ..."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("factor primes must be strictly increasing")
        for p, r in self.factors:
            if r < 1:
                raise ValueError(f"exponent must be >= 1, got {p}^{r}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    @property
    def n(self) -> int:
        return math.prod(p**r for p, r in self.factors)

    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**r for p, r in self.factors)


def factorize(n: int) -> Factorization:
    """Factor n >= 2 by trial division."""
    if n < 2:
        raise ValueError(f"cannot factorize {n}: need n >= 2")
    factors = []
    rest = n
    for p in (2, 3):
        if rest % p == 0:
            r = 0
            while rest % p == 0:
                rest //= p
                r += 1
            factors.append((p, r))
    # 6k +/- 1 wheel
    p = 5
    while p * p <= rest:
        for q in (p, p + 2):
            if rest % q == 0:
                r = 0
                while rest % q == 0:
                    rest //= q
                    r += 1
                factors.append((q, r))
        p += 6
    if rest > 1:
        factors.append((rest, 1))
    factors.sort()
    return Factorization(tuple(factors))


def v_p(n: int, p: int) -> int:
    """Exponent of the prime p in n (0 when p does not divide n)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return r


def radical(n: int) -> int:
    """Largest squarefree divisor of n: the product of its distinct primes."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return math.prod(p for p, _ in factorize(n).factors)


def natural_map(x: Residue, m: int | Modulus) -> Residue:
    """Reduction homomorphism Z_n -> Z_m for a divisor m of n (m >= 2)."""
    target = m if isinstance(m, Modulus) else Modulus(m)
    n = x.modulus.n
    if n % target.n != 0:
        raise ValueError(f"{target.n} does not divide {n}")
    return Residue(x.value % target.n, target)


def component(x: Residue, p: int) -> Residue:
    """Project x in Z_n to its p-part, i.e. reduce mod p^{v_p(n)}."""
    n = x.modulus.n
    r = v_p(n, p)
    if r == 0:
        raise ValueError(f"{p} does not divide {n}")
    return natural_map(x, p**r)


def crt_split(x: Residue) -> tuple[Residue, ...]:
    """All prime-power components of x, ordered by increasing prime."""
    return tuple(component(x, p) for p, _ in factorize(x.modulus.n).factors)


def crt_combine(parts: list[Residue] | tuple[Residue, ...], n: int | Modulus) -> Residue:
    """Inverse of crt_split: the unique residue mod n with the given components.

    The moduli of parts must be exactly the prime-power factors of n, each
    appearing once (any order).
    """
    mod = n if isinstance(n, Modulus) else Modulus(n)
    expected = sorted(factorize(mod.n).prime_powers())
    got = sorted(part.modulus.n for part in parts)
    if got != expected:
        raise ValueError(
            f"component moduli {got} do not match prime-power factors {expected} of {mod.n}"
        )
    total = 0
    for part in parts:
        q = part.modulus.n
        rest = mod.n // q
        total += part.value * rest * pow(rest, -1, q)
    return Residue(total % mod.n, mod)


def _mask_from_bits(bits: np.ndarray) -> int:
    packed = np.packbits(bits, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z_n stored as an n-bit mask (bit v set <=> v is a member)."""

    modulus: Modulus
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.modulus.n:
            raise ValueError("mask has bits outside [0, n-1]")

    @classmethod
    def from_values(cls, n: int | Modulus, values) -> "ResidueSet":
        mod = n if isinstance(n, Modulus) else Modulus(n)
        mask = 0
        for v in values:
            if not 0 <= v < mod.n:
                raise ValueError(f"value {v} out of range for modulus {mod.n}")
            mask |= 1 << v
        return cls(mod, mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.modulus.n and (self.mask >> v) & 1 == 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.values())

    def values(self) -> tuple[int, ...]:
        """Members in ascending order (the CLI serialization)."""
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def union(self, other: "ResidueSet") -> "ResidueSet":
        if other.modulus != self.modulus:
            raise ValueError("modulus mismatch")
        return ResidueSet(self.modulus, self.mask | other.mask)

    def intersection(self, other: "ResidueSet") -> "ResidueSet":
        if other.modulus != self.modulus:
            raise ValueError("modulus mismatch")
        return ResidueSet(self.modulus, self.mask & other.mask)


def _check_enum_cap(n: int):
    if n > ENUMERATION_CAP:
        raise ValueError(
            f"set enumeration for n={n} exceeds cap {ENUMERATION_CAP}; "
            "use the size_* operations instead"
        )


def units(n: int) -> ResidueSet:
    """U(n), the multiplicative group of Z_n."""
    mod = Modulus(n)
    _check_enum_cap(n)
    xs = np.arange(n, dtype=np.int64)
    bits = (np.gcd(xs, n) == 1).astype(np.uint8)
    return ResidueSet(mod, _mask_from_bits(bits))


def squares(n: int) -> ResidueSet:
    """S(n) = {x^2 : x in Z_n}."""
    mod = Modulus(n)
    _check_enum_cap(n)
    xs = np.arange(n, dtype=np.int64)
    sq = (xs * xs) % n
    bits = np.zeros(n, dtype=np.uint8)
    bits[sq] = 1
    return ResidueSet(mod, _mask_from_bits(bits))


def nonzero_squares(n: int) -> ResidueSet:
    """S(n)* = S(n) minus 0, the nonzero squares."""
    s = squares(n)
    return ResidueSet(s.modulus, s.mask & ~1)


def unit_squares(n: int) -> ResidueSet:
    """U(n)^2 = {x^2 : x in U(n)}, the squares of units."""
    mod = Modulus(n)
    _check_enum_cap(n)
    xs = np.arange(n, dtype=np.int64)
    us = xs[np.gcd(xs, n) == 1]
    sq = (us * us) % n
    bits = np.zeros(n, dtype=np.uint8)
    bits[sq] = 1
    return ResidueSet(mod, _mask_from_bits(bits))


def q_p(p: int) -> ResidueSet:
    """Q_p, the quadratic residues mod an odd prime p (= U(p)^2)."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"q_p requires an odd prime, got {p}")
    return unit_squares(p)


def size_unit_squares_prime_power(p: int, r: int) -> int:
    """|U(p^r)^2| in closed form: p^{r-1}(p-1)/2 for odd p; 1, 1, 2^{r-3} for p = 2."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if p == 2:
        return 1 if r <= 2 else 2 ** (r - 3)
    return p ** (r - 1) * (p - 1) // 2


def size_nonzero_squares_prime_power(p: int, r: int) -> int:
    """|S(p^r)*| as the sum of |U(p^{r-2k})^2| over 2k in [0, r-1]."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    s = (r - 1) // 2
    return sum(size_unit_squares_prime_power(p, r - 2 * k) for k in range(s + 1))


def size_squares(n: int) -> int:
    """|S(n)|, multiplicative over the prime-power factors of n."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return math.prod(
        size_nonzero_squares_prime_power(p, r) + 1 for p, r in factorize(n).factors
    )


def unit_power_decomposition(x: Residue) -> tuple[int, Residue]:
    """Write a nonzero x in Z_{p^r} uniquely as p^k * u with u a unit, k in [0, r-1]."""
    fact = factorize(x.modulus.n)
    if len(fact.factors) != 1:
        raise ValueError(f"modulus {x.modulus.n} is not a prime power")
    if x.value == 0:
        raise ValueError("cannot decompose 0")
    p, _ = fact.factors[0]
    k = 0
    u = x.value
    while u % p == 0:
        u //= p
        k += 1
    return k, Residue(u, x.modulus)


def closed_form_set_size(n: int, family: str) -> int:
    """Closed-form size of a named weight family over Z_n (no enumeration)."""
    fact = factorize(n)
    if family == "units":
        return math.prod(p ** (r - 1) * (p - 1) for p, r in fact.factors)
    if family == "unit-squares":
        return math.prod(size_unit_squares_prime_power(p, r) for p, r in fact.factors)
    if family == "nonzero-squares":
        return size_squares(n) - 1
    if family == "q_p":
        if n == 2 or not is_prime(n):
            raise ValueError(f"q_p family requires an odd prime, got {n}")
        return (n - 1) // 2
    raise ValueError(f"unknown family {family!r}")


_FAMILIES = ("nonzero-squares", "unit-squares", "units", "q_p")


def family_set(n: int, family: str) -> ResidueSet:
    """Enumerated weight family over Z_n; see closed_form_set_size for sizes."""
    if family == "nonzero-squares":
        return nonzero_squares(n)
    if family == "unit-squares":
        return unit_squares(n)
    if family == "units":
        return units(n)
    if family == "q_p":
        return q_p(n)
    raise ValueError(f"unknown family {family!r} (expected one of {_FAMILIES})")


def reduce_mod(values, n: int) -> list[int]:
    """Reduce a list of integers into [0, n-1]."""
    return [v % n for v in values]
