"""Continuous-time quantum walk on P_n restricted to one excitation.

The transition amplitude ``U(t)[a, b]`` with ``U(t) = exp(i t A)`` is
evaluated from the closed-form spectral decomposition in O(n) per time.
:func:`oracle_expm` computes the same matrix by Taylor series with scaling
and squaring, sharing no code with the spectral route.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, ClampViolation, RangeViolation
from .spectra import PathPair, PathSpectrum

CLAMP_SLACK = 1e-12
TOL_STEP = 0.05
TOP_K = 8
TIME_RESOLUTION = 1e-9
DEFAULT_MAX_EVALS = 10**8
CHUNK = 1 << 16


def _check_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t):
        raise RangeViolation(f"time must be finite, got {t}")
    return t


class _Weights:
    """Nonzero spectral weights ``(theta_j, E_j[a, b])`` for one pair."""

    def __init__(self, n: int, a: int, b: int):
        PathPair(n, a, b)
        spec = PathSpectrum(n)
        w = spec.projector_column(a, b)
        keep = w != 0.0
        self.theta = np.ascontiguousarray(spec.eigenvalues[keep])
        self.weight = np.ascontiguousarray(w[keep])

    @property
    def lipschitz(self) -> float:
        # |d/dt |u|^2| <= 2 |u| |u'| <= 2 sum |theta_j| |w_j|
        return 2.0 * float(np.sum(np.abs(self.theta) * np.abs(self.weight)))

    def fidelity_array(self, times: np.ndarray) -> np.ndarray:
        # per-element accumulation in fixed j order keeps results independent of chunking
        re = np.zeros(times.shape)
        im = np.zeros(times.shape)
        for th, w in zip(self.theta, self.weight):
            phase = th * times
            re += w * np.cos(phase)
            im += w * np.sin(phase)
        return re * re + im * im


def amplitude(n: int, a: int, b: int, t: float) -> complex:
    """``exp(i t A)[a, b]`` as a complex number."""
    t = _check_time(t)
    w = _Weights(n, a, b)
    phase = w.theta * t
    return complex(np.sum(w.weight * np.cos(phase)), np.sum(w.weight * np.sin(phase)))


def _clamp(f: float) -> float:
    if f > 1.0 + CLAMP_SLACK:
        raise ClampViolation(f"fidelity {f!r} exceeds 1 by more than {CLAMP_SLACK}")
    return min(max(f, 0.0), 1.0)


def fidelity(n: int, a: int, b: int, t: float) -> float:
    """Probability of finding the excitation at ``b`` at time ``t`` when it starts at ``a``."""
    amp = amplitude(n, a, b, t)
    return _clamp(amp.real * amp.real + amp.imag * amp.imag)


@dataclass
class FidelityTrace:
    pair: PathPair
    times: np.ndarray
    fidelities: np.ndarray
    best_time: float
    best_fidelity: float
    epsilon: float
    t_max: float
    step: float
    lipschitz: float
    evaluations: int
    complete: bool = True
    candidates: list[tuple[float, float]] = field(default_factory=list)

    @property
    def achieved(self) -> bool:
        return self.best_fidelity >= 1.0 - self.epsilon

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.times.tolist(), self.fidelities.tolist()))

    def summary(self) -> dict:
        return {
            "achieved": self.achieved,
            "best_time": self.best_time,
            "best_fidelity": self.best_fidelity,
            "samples_evaluated": self.evaluations,
            "grid_step": self.step,
            "lipschitz_bound": self.lipschitz,
            "complete": self.complete,
        }

    def to_csv(self, fmt=None) -> str:
        fmt = fmt or (lambda x: format(x, ".17g"))
        lines = ["t,fidelity"]
        lines += [f"{fmt(t)},{fmt(f)}" for t, f in zip(self.times.tolist(), self.fidelities.tolist())]
        return "\n".join(lines) + "\n"


def _scan_chunk(w: _Weights, t_max: float, M: int, lo: int, hi: int, keep: bool, k: int):
    """Evaluate grid points ``lo..hi-1`` of ``i * t_max / M``.

    Returns the up-to-``k`` best local maxima as ``(f, i)`` and, if ``keep``,
    the fidelities themselves.
    """
    ext_lo, ext_hi = max(lo - 1, 0), min(hi + 1, M + 1)
    times = np.arange(ext_lo, ext_hi, dtype=np.float64) * (t_max / M)
    f = w.fidelity_array(times)
    padded = np.concatenate(([-np.inf] if lo == 0 else [], f, [-np.inf] if ext_hi == hi else []))
    inner, left, right = padded[1:-1], padded[:-2], padded[2:]
    peaks = np.nonzero((inner >= left) & (inner >= right))[0]
    order = np.lexsort((peaks, -inner[peaks]))[:k]
    best = [(float(inner[peaks[o]]), lo + int(peaks[o])) for o in order]
    return best, (inner.copy() if keep else None)


def _ternary_max(w: _Weights, lo: float, hi: float, resolution: float) -> tuple[float, float, int]:
    evals = 0
    # the iteration cap matters only when resolution is below float spacing at large t
    for _ in range(400):
        if hi - lo <= resolution:
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        f1, f2 = w.fidelity_array(np.array([m1, m2]))
        evals += 2
        if f1 < f2:
            lo = m1
        else:
            hi = m2
    mid = 0.5 * (lo + hi)
    return mid, float(w.fidelity_array(np.array([mid]))[0]), evals + 1


def search_best_time(
    n: int,
    a: int,
    b: int,
    epsilon: float,
    t_max: float,
    *,
    max_evals: int = DEFAULT_MAX_EVALS,
    workers: int = 1,
    record: bool = True,
    tol_step: float = TOL_STEP,
    top_k: int = TOP_K,
    resolution: float = TIME_RESOLUTION,
) -> FidelityTrace:
    """Scan ``[0, t_max]`` for the time of highest transfer fidelity.

    The grid step is ``tol_step / L`` with ``L`` a Lipschitz bound on the
    fidelity, so neighbouring samples differ by at most ``tol_step``. The
    ``top_k`` best local grid maxima are refined by ternary search to
    ``resolution``. A trace whose ``achieved`` flag is false only means
    nothing was found within the budget.

    With ``record=False`` the returned trace keeps only the refined
    candidates, not every grid sample. Results do not depend on ``workers``.
    Raises :class:`BudgetExceeded` (carrying the partial trace) when the
    grid has more than ``max_evals`` points.
    """
    pair = PathPair(n, a, b)
    if not 0.0 < epsilon < 1.0:
        raise RangeViolation(f"epsilon must lie in (0, 1), got {epsilon}")
    t_max = _check_time(t_max)
    if t_max <= 0.0:
        raise RangeViolation(f"t_max must be positive, got {t_max}")
    if workers < 1:
        raise RangeViolation(f"workers must be >= 1, got {workers}")

    w = _Weights(n, a, b)
    L = w.lipschitz
    M = max(1, math.ceil(t_max * L / tol_step)) if L > 0 else 1
    step = t_max / M
    total = M + 1
    complete = total <= max_evals
    scanned = total if complete else max(int(max_evals), 1)
    # partial scans cover the prefix [0, (scanned - 1) * step]
    bounds = list(range(0, scanned, CHUNK)) + [scanned]
    spans = list(zip(bounds[:-1], bounds[1:]))

    def run(span):
        lo, hi = span
        return _scan_chunk(w, t_max, M, lo, hi, record, top_k)

    if workers == 1 or len(spans) == 1:
        results = [run(s) for s in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, spans))

    peaks = sorted((p for best, _ in results for p in best), key=lambda fi: (-fi[0], fi[1]))[:top_k]
    # a partial scan's last point is not a true local max test on the right; harmless
    evaluations = scanned
    candidates = []
    best_t, best_f = 0.0, -1.0
    for f_grid, i in peaks:
        t_grid = i * step
        lo, hi = max(0.0, t_grid - step), min(t_max, t_grid + step)
        t_ref, f_ref, used = _ternary_max(w, lo, hi, resolution)
        evaluations += used
        if f_ref < f_grid:
            t_ref, f_ref = t_grid, f_grid
        candidates.append((t_ref, f_ref))
        if f_ref > best_f or (f_ref == best_f and t_ref < best_t):
            best_t, best_f = t_ref, f_ref

    if record:
        times = np.arange(scanned, dtype=np.float64) * step
        fids = np.concatenate([f for _, f in results])
        # refined points join the trace so best_fidelity is the max over samples
        extra_t = np.array([c[0] for c in candidates])
        extra_f = np.array([c[1] for c in candidates])
        times = np.concatenate((times, extra_t))
        fids = np.concatenate((fids, extra_f))
        order = np.argsort(times, kind="stable")
        times, fids = times[order], fids[order]
    else:
        cand = sorted(candidates)
        times = np.array([c[0] for c in cand], dtype=np.float64)
        fids = np.array([c[1] for c in cand], dtype=np.float64)

    if fids.size and fids.max() > 1.0 + CLAMP_SLACK:
        raise ClampViolation(f"fidelity {fids.max()!r} exceeds 1")
    fids = np.clip(fids, 0.0, 1.0)
    best_f = min(max(best_f, 0.0), 1.0)

    trace = FidelityTrace(
        pair=pair,
        times=times,
        fidelities=fids,
        best_time=float(best_t),
        best_fidelity=float(best_f),
        epsilon=float(epsilon),
        t_max=t_max,
        step=step,
        lipschitz=L,
        evaluations=evaluations,
        complete=complete,
        candidates=candidates,
    )
    if not complete:
        raise BudgetExceeded(
            f"grid needs {total} evaluations, cap is {max_evals}", trace=trace, evaluations=evaluations
        )
    return trace


def adjacency_matrix(n: int) -> np.ndarray:
    A = np.zeros((n, n))
    idx = np.arange(n - 1)
    A[idx, idx + 1] = 1.0
    A[idx + 1, idx] = 1.0
    return A


ORACLE_MAX_N = 16
ORACLE_MAX_T = 100.0


def oracle_expm(n: int, t: float) -> np.ndarray:
    """Dense ``exp(i t A(P_n))`` by scaled Taylor series and repeated squaring."""
    if not 1 <= n <= ORACLE_MAX_N:
        raise RangeViolation(f"oracle supports 1 <= n <= {ORACLE_MAX_N}, got {n}")
    t = _check_time(t)
    if abs(t) > ORACLE_MAX_T:
        raise RangeViolation(f"oracle supports |t| <= {ORACLE_MAX_T}, got {t}")

    X = 1j * t * adjacency_matrix(n)
    norm = float(np.max(np.sum(np.abs(X), axis=0)))  # induced 1-norm
    squarings = max(0, math.ceil(math.log2(norm / 0.25))) if norm > 0 else 0
    X = X / (2.0**squarings)

    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 40):
        term = term @ X / k
        result = result + term
        if np.max(np.abs(term)) < 1e-18:
            break
    for _ in range(squarings):
        result = result @ result
    return result
