"""Exact decision procedure for pretty good state transfer on paths."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .numtheory import is_prime, two_adic
from .spectra import PathPair


class Verdict(str, enum.Enum):
    PGST = "PGST"
    NO_PGST = "NO_PGST"
    DEGENERATE = "DEGENERATE"


class Reason(str, enum.Enum):
    NOT_MIRROR_PAIR = "NOT_MIRROR_PAIR"
    ODD_PART_COMPOSITE = "ODD_PART_COMPOSITE"
    BAD_DYADIC_ALIGNMENT = "BAD_DYADIC_ALIGNMENT"
    POWER_OF_TWO_CASE = "POWER_OF_TWO_CASE"
    PRIME_CASE = "PRIME_CASE"
    SELF_PAIR = "SELF_PAIR"


@dataclass(frozen=True)
class Classification:
    """Verdict for a vertex pair plus the 2-adic data of ``n + 1``.

    ``t`` and ``r`` always satisfy ``n + 1 == 2**t * r``; ``p`` equals ``r``
    when ``r`` is prime and is ``None`` otherwise.
    """

    n: int
    a: int
    b: int
    verdict: Verdict
    reason: Reason
    t: int
    r: int
    p: int | None

    @property
    def params(self) -> tuple[int, int, int | None]:
        return self.t, self.r, self.p

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason.value,
            "t": self.t,
            "r": self.r,
            "p": self.p,
        }


def dyadic_modulus(t: int) -> int:
    """Required divisor of ``a`` in the prime case; 1 when ``t`` is 0 or 1."""
    return 1 << (t - 1) if t >= 1 else 1


def classify(n: int, a: int, b: int) -> Classification:
    """Classify the pair ``(a, b)`` of P_n.

    PGST holds iff ``a != b``, ``a + b == n + 1`` and, writing
    ``n + 1 = 2**t * r`` with ``r`` odd, either ``r == 1`` or ``r`` is prime
    and ``a`` is a multiple of ``2**(t-1)`` (no constraint for t <= 1).
    Negative reasons are reported in the order mirror, odd part, alignment.
    """
    PathPair(n, a, b)
    t, r = two_adic(n + 1)
    r_prime = r > 1 and is_prime(r)
    p = r if r_prime else None

    def result(verdict: Verdict, reason: Reason) -> Classification:
        return Classification(n, a, b, verdict, reason, t, r, p)

    if a == b:
        return result(Verdict.DEGENERATE, Reason.SELF_PAIR)
    if a + b != n + 1:
        return result(Verdict.NO_PGST, Reason.NOT_MIRROR_PAIR)
    if r == 1:
        return result(Verdict.PGST, Reason.POWER_OF_TWO_CASE)
    if not r_prime:
        return result(Verdict.NO_PGST, Reason.ODD_PART_COMPOSITE)
    if a % dyadic_modulus(t):
        return result(Verdict.NO_PGST, Reason.BAD_DYADIC_ALIGNMENT)
    return result(Verdict.PGST, Reason.PRIME_CASE)


def classify_end_vertices(n: int) -> bool:
    """End-vertex PGST: ``n + 1`` is a prime, twice a prime, or a power of two.

    Written without reference to :func:`classify` so the two can be
    cross-checked.
    """
    if n < 2:
        raise ValueError(f"end-vertex question needs n >= 2, got {n}")
    m = n + 1
    if m & (m - 1) == 0:
        return True
    if is_prime(m):
        return True
    return m % 2 == 0 and is_prime(m // 2)


def pgst_pairs(n: int) -> list[tuple[int, int]]:
    """All pairs ``a < b`` of P_n admitting PGST, ordered by ``a``."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    pairs = []
    for a in range(1, (n + 1) // 2 + 1):
        b = n + 1 - a
        if a < b and classify(n, a, b).verdict is Verdict.PGST:
            pairs.append((a, b))
    return pairs
