"""Obstruction certificates ruling out pretty good state transfer.

A certificate for a mirror pair ``(a, n + 1 - a)`` consists of two integer
combinations of support eigenvalues, one over odd indices and one over
even indices. Each combination must vanish while its coefficients have an
odd sum. Kronecker's approximation theorem then forces the transfer phase
to be both 0 and pi modulo 2 pi, so fidelity stays bounded away from 1.

Certificates are built from alternating cosine sums that vanish
identically (see :func:`lemma5_sum`), choosing the block so that it
avoids the indices missing from the support of ``a``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .classifier import Reason, Verdict, classify
from .errors import CertificateNotApplicable, RangeViolation
from .numtheory import odd_prime_factors, two_adic
from .spectra import _check_n, _check_vertex, cos_pi_frac, in_support

ZERO_SUM_TOL = 1e-10


class CaseTag(str, enum.Enum):
    DYADIC_PRIME_BLOCK = "DYADIC_PRIME_BLOCK"
    DYADIC_RESIDUE_BLOCK = "DYADIC_RESIDUE_BLOCK"
    ODD_REFLECTION_BLOCK = "ODD_REFLECTION_BLOCK"


@dataclass(frozen=True)
class ObstructionCertificate:
    n: int
    a: int
    odd_class: dict[int, int]
    even_class: dict[int, int]
    case_tag: CaseTag

    @property
    def b(self) -> int:
        return self.n + 1 - self.a

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "b": self.b,
            "case_tag": self.case_tag.value,
            "odd_class": [[j, c] for j, c in sorted(self.odd_class.items())],
            "even_class": [[j, c] for j, c in sorted(self.even_class.items())],
        }


@dataclass(frozen=True)
class ClassCheck:
    parity_ok: bool
    support_ok: bool
    coefficient_sum: int
    residual: float
    tolerance: float

    @property
    def sum_odd(self) -> bool:
        return self.coefficient_sum % 2 == 1

    @property
    def zero_sum_ok(self) -> bool:
        return self.residual <= self.tolerance


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the four certificate conditions.

    ``parity`` - indices of each class have the right parity;
    ``support`` - every index lies in the eigenvalue support of ``a``;
    ``odd_sums`` - both coefficient sums are odd;
    ``zero_sums`` - both weighted eigenvalue sums vanish numerically.
    """

    odd: ClassCheck
    even: ClassCheck
    problems: list[str] = field(default_factory=list)

    @property
    def parity(self) -> bool:
        return self.odd.parity_ok and self.even.parity_ok

    @property
    def support(self) -> bool:
        return self.odd.support_ok and self.even.support_ok

    @property
    def odd_sums(self) -> bool:
        return self.odd.sum_odd and self.even.sum_odd

    @property
    def zero_sums(self) -> bool:
        return self.odd.zero_sum_ok and self.even.zero_sum_ok

    @property
    def passed(self) -> bool:
        return self.parity and self.support and self.odd_sums and self.zero_sums

    def as_dict(self) -> dict:
        def cls(c: ClassCheck) -> dict:
            return {
                "coefficient_sum": c.coefficient_sum,
                "residual": c.residual,
                "tolerance": c.tolerance,
            }

        return {
            "passed": self.passed,
            "parity": self.parity,
            "support": self.support,
            "odd_sums": self.odd_sums,
            "zero_sums": self.zero_sums,
            "odd_class": cls(self.odd),
            "even_class": cls(self.even),
            "problems": list(self.problems),
        }


def lemma4_sum(q: int) -> float:
    """``2 * sum_{k=1}^{(q-1)/2} (-1)^k cos(k pi / q) + 1``, zero for odd q >= 3."""
    if q < 3 or q % 2 == 0:
        raise RangeViolation(f"q must be odd and >= 3, got {q}")
    terms = [2.0 * (-1) ** k * math.cos(k * math.pi / q) for k in range(1, (q - 1) // 2 + 1)]
    terms.append(1.0)
    return math.fsum(terms)


def lemma5_sum(k: int, m: int, a: int) -> float:
    """``sum_{j=0}^{m-1} (-1)^j cos((a + j k) pi / (k m))``, zero for odd m >= 3."""
    if k < 1:
        raise RangeViolation(f"k must be positive, got {k}")
    if m < 3 or m % 2 == 0:
        raise RangeViolation(f"m must be odd and >= 3, got {m}")
    if not 0 <= a < k:
        raise RangeViolation(f"a must lie in [0, {k}), got {a}")
    km = k * m
    return math.fsum((-1) ** j * math.cos((a + j * k) * math.pi / km) for j in range(m))


def _alternating_block(c: int, step: int, length: int) -> dict[int, int]:
    return {c + i * step: (-1) ** i for i in range(length)}


def _smallest_shared_prime(r: int, quotient: int) -> int | None:
    for p in odd_prime_factors(r):
        if quotient % p == 0:
            return p
    return None


def generate_certificate(n: int, a: int) -> ObstructionCertificate:
    """Build an obstruction certificate for the pair ``(a, n + 1 - a)``.

    Raises :class:`CertificateNotApplicable` unless that pair is a
    non-degenerate mirror pair classified ``NO_PGST``.
    """
    _check_n(n)
    _check_vertex(n, a, "a")
    b = n + 1 - a
    cls = classify(n, a, b)
    if cls.verdict is not Verdict.NO_PGST:
        raise CertificateNotApplicable(
            f"pair ({a}, {b}) of P_{n} is {cls.verdict.value} ({cls.reason.value})"
        )

    N = n + 1
    t, r = two_adic(N)
    quotient = N // math.gcd(a, N)
    classes: list[dict[int, int]] = []

    if cls.reason is Reason.ODD_PART_COMPOSITE and t == 0:
        tag = CaseTag.ODD_REFLECTION_BLOCK
        p = _smallest_shared_prime(r, quotient)
        if p is None:  # a < N = r, so some prime of r survives in N / gcd(a, N)
            raise AssertionError(f"no shared prime for n={n}, a={a}")
        half = (r // p - 1) // 2
        for c in (1, 2):
            block = {c + 2 * p * i: 1 for i in range(half + 1)}
            # theta_{N-j} = -theta_j turns the negative terms into positive ones
            block.update({N - (c + p + 2 * p * i): 1 for i in range(half)})
            classes.append(block)
    elif cls.reason is Reason.ODD_PART_COMPOSITE:
        p = _smallest_shared_prime(r, quotient)
        if p is not None:
            tag = CaseTag.DYADIC_PRIME_BLOCK
            classes = [_alternating_block(c, (1 << t) * p, r // p) for c in (1, 2)]
        else:
            # r | a and a != N/2 force t >= 2 and 4 | N / gcd(a, N)
            tag = CaseTag.DYADIC_RESIDUE_BLOCK
            classes = [_alternating_block(c, 1 << t, r) for c in (1, 2)]
    elif cls.reason is Reason.BAD_DYADIC_ALIGNMENT:
        tag = CaseTag.DYADIC_RESIDUE_BLOCK
        classes = [_alternating_block(c, 1 << t, r) for c in (1, 2)]
    else:
        raise CertificateNotApplicable(
            f"pair ({a}, {b}) of P_{n} is not a mirror pair; no certificate needed"
        )

    odd_class, even_class = (dict(sorted(c.items())) for c in classes)
    return ObstructionCertificate(n, a, odd_class, even_class, tag)


def _check_class(n: int, a: int, coeffs: dict[int, int], parity: int) -> tuple[ClassCheck, list[str]]:
    problems = []
    N = n + 1
    parity_ok = all(j % 2 == parity for j in coeffs)
    if not parity_ok:
        bad = sorted(j for j in coeffs if j % 2 != parity)
        problems.append(f"wrong parity indices {bad}")
    support_ok = all(in_support(n, a, j) for j in coeffs)
    if not support_ok:
        bad = sorted(j for j in coeffs if not in_support(n, a, j))
        problems.append(f"indices outside the support of {a}: {bad}")
    total = sum(coeffs.values())
    valid = [j for j in coeffs if 1 <= j <= n]
    residual = abs(math.fsum(coeffs[j] * 2.0 * cos_pi_frac(j, N) for j in valid))
    tolerance = ZERO_SUM_TOL * sum(abs(c) for c in coeffs.values())
    check = ClassCheck(parity_ok, support_ok, total, residual, tolerance)
    if not check.sum_odd:
        problems.append(f"coefficient sum {total} is even")
    if not check.zero_sum_ok:
        problems.append(f"eigenvalue sum residual {residual:.3e} exceeds {tolerance:.3e}")
    return check, problems


def check_certificate(cert: ObstructionCertificate) -> CertificateReport:
    """Verify the four certificate conditions; failures are reported, not raised."""
    odd, p1 = _check_class(cert.n, cert.a, cert.odd_class, 1)
    even, p2 = _check_class(cert.n, cert.a, cert.even_class, 0)
    return CertificateReport(odd, even, [f"odd class: {s}" for s in p1] + [f"even class: {s}" for s in p2])


def dumps(cert: ObstructionCertificate) -> str:
    """Serialize to the line-oriented text form.

    ::

        n 8
        a 1
        case_tag ODD_REFLECTION_BLOCK
        odd 1 1
        ...
        even 2 1
    """
    lines = [f"n {cert.n}", f"a {cert.a}", f"case_tag {cert.case_tag.value}"]
    lines += [f"odd {j} {c}" for j, c in sorted(cert.odd_class.items())]
    lines += [f"even {j} {c}" for j, c in sorted(cert.even_class.items())]
    return "\n".join(lines) + "\n"


def loads(text: str) -> ObstructionCertificate:
    header: dict[str, str] = {}
    classes: dict[str, dict[int, int]] = {"odd": {}, "even": {}}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        if key in classes and len(parts) == 3:
            j, c = int(parts[1]), int(parts[2])
            if j in classes[key]:
                raise ValueError(f"line {lineno}: duplicate index {j} in {key} class")
            classes[key][j] = c
        elif key in ("n", "a", "case_tag") and len(parts) == 2:
            header[key] = parts[1]
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    missing = {"n", "a", "case_tag"} - header.keys()
    if missing:
        raise ValueError(f"missing header fields: {sorted(missing)}")
    n, a = int(header["n"]), int(header["a"])
    _check_n(n)
    _check_vertex(n, a, "a")
    return ObstructionCertificate(n, a, classes["odd"], classes["even"], CaseTag(header["case_tag"]))
