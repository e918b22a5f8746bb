"""Exact integer helpers: primality, odd prime factors and 2-adic splitting.

Everything here works on Python ints and is deterministic for all inputs
below 2**64.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .errors import FactorizationError, RangeViolation

UINT64_LIMIT = 1 << 64
TRIAL_DIVISION_LIMIT = 10**6

# The first twelve primes are a deterministic witness set for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class TwoAdicForm(NamedTuple):
    """``m == 2**t * r`` with ``r`` odd."""

    t: int
    r: int


def _check_positive(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int):
        raise TypeError(f"expected an int, got {type(m).__name__}")
    if m < 1:
        raise RangeViolation(f"expected a positive integer, got {m}")
    if m >= UINT64_LIMIT:
        raise RangeViolation(f"{m} does not fit in 64 bits")


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(m: int) -> bool:
    """Deterministic primality test for 1 <= m < 2**64.

    >>> is_prime(2), is_prime(9), is_prime(2147483647)
    (True, False, True)
    """
    _check_positive(m)
    if m < 2:
        return False
    for p in _MR_BASES:
        if m % p == 0:
            return m == p
    return _miller_rabin(m)


def two_adic(m: int) -> TwoAdicForm:
    """Split ``m`` into its power of two and odd part."""
    _check_positive(m)
    t = (m & -m).bit_length() - 1
    return TwoAdicForm(t, m >> t)


@lru_cache(maxsize=1)
def _odd_primes_below_limit() -> tuple[int, ...]:
    sieve = bytearray([1]) * TRIAL_DIVISION_LIMIT
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_DIVISION_LIMIT - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, TRIAL_DIVISION_LIMIT, i)))
    return tuple(i for i in range(3, TRIAL_DIVISION_LIMIT, 2) if sieve[i])


def _pollard_brent(n: int, max_iter: int = 1 << 22) -> int | None:
    # n is odd, composite and has no prime factor below TRIAL_DIVISION_LIMIT
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        steps = 0
        while g == 1 and steps < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
            steps += r
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _split_large(n: int, out: set[int]) -> None:
    if is_prime(n):
        out.add(n)
        return
    d = _pollard_brent(n)
    if d is None:
        raise FactorizationError(f"could not split composite cofactor {n}")
    _split_large(d, out)
    _split_large(n // d, out)


def odd_prime_factors(m: int) -> list[int]:
    """Distinct odd primes dividing ``m``, in increasing order.

    Trial division handles all factors below 10**6; whatever cofactor
    remains is either prime or a product of large primes and is split with
    Pollard-Brent. :class:`FactorizationError` is raised if that fails.
    """
    _check_positive(m)
    n = two_adic(m).r
    found: list[int] = []
    for p in _odd_primes_below_limit():
        if p * p > n:
            break
        if n % p == 0:
            found.append(p)
            while n % p == 0:
                n //= p
    if n > 1:
        large: set[int] = set()
        _split_large(n, large)
        found.extend(sorted(large))
    return found


def is_power_of_two(m: int) -> bool:
    return two_adic(m).r == 1
