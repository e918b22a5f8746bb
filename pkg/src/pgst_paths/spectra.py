"""Closed-form spectral data of the path graph P_n.

Vertices and eigenvalue indices are 1-based throughout, matching the usual
labelling of a path ``1 - 2 - ... - n``. With ``N = n + 1`` the eigenvalues
are ``2 cos(pi j / N)`` and the ``j``-th eigenvector has entries
``sin(pi k j / N)``.

Trigonometric values are evaluated from the integer numerator ``k`` of the
angle ``pi k / N``. The numerator is reduced modulo ``2N`` and folded into
``[0, N/2]`` before calling ``cos``/``sin``, which keeps large index
products accurate and makes ``cos(pi (N - k) / N) == -cos(pi k / N)`` hold
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import RangeViolation


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < 1:
        raise RangeViolation(f"path length must be >= 1, got {n}")


def _check_vertex(n: int, v: int, name: str = "vertex") -> None:
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise TypeError(f"{name} must be an int, got {type(v).__name__}")
    if not 1 <= v <= n:
        raise RangeViolation(f"{name} {v} outside 1..{n}")


def cos_pi_frac(k, N: int):
    """``cos(pi * k / N)`` for integer ``k`` (scalar or array)."""
    k = np.mod(np.asarray(k, dtype=np.int64), 2 * N)
    k = np.where(k > N, 2 * N - k, k)
    flip = 2 * k > N
    folded = np.where(flip, N - k, k)
    val = np.cos(np.pi * folded / N)
    val = np.where(flip, -val, val)
    val = np.where(2 * k == N, 0.0, val)
    return val if val.ndim else float(val)


def sin_pi_frac(k, N: int):
    """``sin(pi * k / N)`` for integer ``k`` (scalar or array).

    Exact zeros are returned when ``N`` divides ``k``.
    """
    k = np.mod(np.asarray(k, dtype=np.int64), 2 * N)
    neg = k >= N
    k = np.where(neg, k - N, k)
    k = np.where(2 * k > N, N - k, k)
    val = np.sin(np.pi * k / N)
    val = np.where(neg, -val, val)
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class PathPair:
    n: int
    a: int
    b: int

    def __post_init__(self):
        _check_n(self.n)
        _check_vertex(self.n, self.a, "a")
        _check_vertex(self.n, self.b, "b")

    @property
    def is_mirror(self) -> bool:
        return self.a + self.b == self.n + 1


@dataclass(frozen=True)
class PathSpectrum:
    """Eigenvalues and spectral idempotents of the adjacency matrix of P_n.

    Nothing of size ``n x n`` is stored; ``eigenvalue`` and
    ``projector_entry`` are O(1) per query.
    """

    n: int

    def __post_init__(self):
        _check_n(self.n)

    @property
    def N(self) -> int:
        return self.n + 1

    def _check_index(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise RangeViolation(f"eigenvalue index {j} outside 1..{self.n}")

    def eigenvalue(self, j: int) -> float:
        self._check_index(j)
        return 2.0 * cos_pi_frac(j, self.N)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues, strictly decreasing (index ``j`` at position ``j-1``)."""
        vals = 2.0 * cos_pi_frac(np.arange(1, self.n + 1), self.N)
        vals.setflags(write=False)
        return vals

    def projector_entry(self, j: int, u: int, v: int) -> float:
        """Entry ``(u, v)`` of the idempotent projecting onto eigenvalue ``j``."""
        self._check_index(j)
        _check_vertex(self.n, u, "u")
        _check_vertex(self.n, v, "v")
        N = self.N
        return (2.0 / N) * (sin_pi_frac(u * j, N) * sin_pi_frac(v * j, N))

    def projector_column(self, u: int, v: int) -> np.ndarray:
        """``projector_entry(j, u, v)`` for every ``j`` as an array."""
        _check_vertex(self.n, u, "u")
        _check_vertex(self.n, v, "v")
        N = self.N
        j = np.arange(1, self.n + 1, dtype=np.int64)
        return (2.0 / N) * (sin_pi_frac(u * j, N) * sin_pi_frac(v * j, N))

    def eigenvector(self, j: int, normalized: bool = True) -> np.ndarray:
        self._check_index(j)
        k = np.arange(1, self.n + 1, dtype=np.int64)
        vec = sin_pi_frac(k * j, self.N)
        if normalized:
            vec = vec * math.sqrt(2.0 / self.N)
        return vec

    def projector(self, j: int) -> np.ndarray:
        """Dense idempotent for eigenvalue ``j``; meant for small ``n``."""
        vec = self.eigenvector(j)
        return np.outer(vec, vec)


def spectrum(n: int) -> PathSpectrum:
    return PathSpectrum(n)


def adjacency_matvec(vec: np.ndarray) -> np.ndarray:
    """Apply the path adjacency matrix to ``vec`` without forming it."""
    vec = np.asarray(vec)
    out = np.zeros_like(vec)
    out[1:] += vec[:-1]
    out[:-1] += vec[1:]
    return out


@dataclass(frozen=True)
class SupportMask:
    """Eigenvalue support of vertex ``a``: indices ``j`` with ``E_j e_a != 0``."""

    n: int
    a: int
    included: frozenset[int]

    @property
    def excluded(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.included

    @property
    def period(self) -> int:
        """Excluded indices are exactly the multiples of this number."""
        N = self.n + 1
        return N // math.gcd(self.a, N)

    def __contains__(self, j: int) -> bool:
        return j in self.included


def support(n: int, a: int) -> SupportMask:
    """Eigenvalue support of ``a`` by the divisibility rule ``N | a j``."""
    _check_n(n)
    _check_vertex(n, a, "a")
    N = n + 1
    step = N // math.gcd(a, N)
    included = frozenset(j for j in range(1, n + 1) if j % step)
    return SupportMask(n, a, included)


def in_support(n: int, a: int, j: int) -> bool:
    """O(1) membership test equivalent to ``j in support(n, a)``."""
    N = n + 1
    return 1 <= j <= n and (a * j) % N != 0


@dataclass(frozen=True)
class Cospectrality:
    cospectral: bool
    signs: tuple[int, ...] | None = None
    max_residual: float | None = None


def strongly_cospectral(n: int, a: int, b: int, *, tol: float = 1e-10) -> Cospectrality:
    """Decide strong cospectrality of ``a`` and ``b`` in P_n.

    On a path this happens exactly for mirror pairs ``a + b == n + 1``. In
    that case ``E_j e_a = s_j E_j e_b`` with ``s_j = +1`` for odd ``j`` and
    ``-1`` for even ``j``; the relation is checked numerically over every
    entry before returning, and an ``AssertionError`` signals a violation.

    The answer concerns the mirror relation, so ``a == b`` off the centre
    reports False even though a vertex is trivially cospectral with itself.
    """
    PathPair(n, a, b)
    if a + b != n + 1:
        return Cospectrality(False)
    N = n + 1
    j = np.arange(1, n + 1, dtype=np.int64)
    signs = np.where(j % 2 == 1, 1, -1)
    va = sin_pi_frac(a * j, N)
    vb = sin_pi_frac(b * j, N)
    # E_j[a, v] - s_j E_j[b, v] = (2/N) (va - s vb) * sin(v j pi / N); |sin| <= 1
    residual = float(np.max(np.abs((2.0 / N) * (va - signs * vb)))) if n else 0.0
    if residual > tol:
        raise AssertionError(
            f"sign profile violated for n={n}, a={a}, b={b}: residual {residual:.3e}"
        )
    return Cospectrality(True, tuple(int(s) for s in signs), residual)
