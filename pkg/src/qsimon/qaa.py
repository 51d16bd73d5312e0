"""Quantum amplitude amplification: iteration counts and exact simulators.

A QAA run with initial success probability p = sin^2(theta) and m iterations
of G = -A S0 A^-1 U_g succeeds with probability sin^2((2m+1) theta).  The
global sign of G does not affect measurement statistics and is dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

MAX_TABLE_BITS = 24


def _check_p(p: float) -> None:
    if not 0 < p <= 1:
        raise ValueError(f"success probability must be in (0, 1], got {p}")


def iteration_count(p: float) -> int:
    """floor(pi / (4 arcsin sqrt p)) with the exact arcsin.

    The ratio is an integer only at p = 1/2 (ratio 1), where float arcsin
    lands a hair low; the slack keeps that floor at 1.
    """
    _check_p(p)
    return math.floor(math.pi / (4 * math.asin(math.sqrt(p))) + 1e-9)


def iteration_count_log2(p_log2: float) -> int:
    """``iteration_count`` for p = 2^p_log2, accurate for tiny p."""
    if p_log2 > 0:
        raise ValueError("p must not exceed 1")
    if p_log2 > -40:
        return iteration_count(2.0 ** p_log2)
    # arcsin x = x (1 + x^2/6 + ...); below 2^-20 the correction is invisible in a float
    return math.floor(math.pi / 4 * 2.0 ** (-p_log2 / 2))


def success_probability(p: float, iterations: int) -> float:
    _check_p(p)
    theta = math.asin(math.sqrt(p))
    return math.sin((2 * iterations + 1) * theta) ** 2


@dataclass(frozen=True)
class QaaPlan:
    """One QAA instance: space size, solution count and iteration count."""

    search_bits: float
    solutions: float = 1.0
    p: float | None = None
    label: str = ""

    @property
    def p_log2(self) -> float:
        if self.p is not None:
            return math.log2(self.p)
        return math.log2(self.solutions) - self.search_bits

    @property
    def iterations(self) -> int:
        return iteration_count_log2(self.p_log2)

    @property
    def paper_iterations(self) -> int:
        """The approximation floor(pi/4 * sqrt(1/p))."""
        return math.floor(math.pi / 4 * 2.0 ** (-self.p_log2 / 2))

    @property
    def success(self) -> float:
        if self.p_log2 < -60:
            return 1.0
        return success_probability(2.0 ** self.p_log2, self.iterations)


# -- subspace simulation -----------------------------------------------------------
@dataclass(frozen=True)
class SubspaceState:
    """Aggregate amplitudes on the GOOD and BAD components."""

    good: float
    bad: float

    @property
    def norm(self) -> float:
        return self.good ** 2 + self.bad ** 2


@dataclass(frozen=True)
class QaaResult:
    p: float
    iterations: int
    success_prob: float
    distribution: np.ndarray | None = None
    trajectory: tuple[SubspaceState, ...] = ()

    def digest(self) -> str:
        """Stable short fingerprint of the distribution."""
        if self.distribution is None:
            return ""
        import hashlib
        q = np.round(self.distribution, 12).tobytes()
        return hashlib.sha256(q).hexdigest()[:16]


def evolve_aggregate(p: float, iterations: int) -> tuple[SubspaceState, ...]:
    """States after 0..iterations applications of G in the 2D GOOD/BAD plane."""
    _check_p(p)
    theta = math.asin(math.sqrt(p))
    out = []
    for j in range(iterations + 1):
        a = (2 * j + 1) * theta
        out.append(SubspaceState(math.sin(a), math.cos(a)))
    return tuple(out)


def simulate_qaa_subspace(marked: np.ndarray | Callable[[np.ndarray], np.ndarray],
                          space_bits: int | None = None, iterations: int | str = "auto",
                          initial: np.ndarray | None = None) -> QaaResult:
    """Exact QAA on an explicit amplitude table (at most 2^24 entries).

    ``marked`` is a boolean array over the space, or a vectorized predicate
    applied to ``arange(2**space_bits)``.  ``initial`` is A|0>, uniform by
    default; the reflection is about this state, so non-uniform A (candidate
    superpositions) is handled exactly.
    """
    if callable(marked):
        if space_bits is None:
            raise ValueError("space_bits required with a predicate")
        if space_bits > MAX_TABLE_BITS:
            raise ValueError(f"per-key tables support at most {MAX_TABLE_BITS} bits; use evolve_aggregate")
        mask = np.asarray(marked(np.arange(1 << space_bits)), dtype=bool)
    else:
        mask = np.asarray(marked, dtype=bool)
        if mask.size > 1 << MAX_TABLE_BITS:
            raise ValueError(f"per-key tables support at most {MAX_TABLE_BITS} bits; use evolve_aggregate")
    size = mask.size
    if initial is None:
        s = np.full(size, 1 / math.sqrt(size))
    else:
        s = np.asarray(initial, dtype=float)
        if s.shape != mask.shape:
            raise ValueError("initial state shape differs from the marked table")
        s = s / np.linalg.norm(s)
    p = float(np.sum(s[mask] ** 2))
    _check_p(p)
    m = iteration_count(p) if iterations == "auto" else int(iterations)
    psi = s.copy()
    sign = np.where(mask, -1.0, 1.0)
    traj = [SubspaceState(float(np.linalg.norm(psi[mask])), float(np.linalg.norm(psi[~mask])))]
    for _ in range(m):
        psi *= sign
        psi = 2 * s * float(s @ psi) - psi
        traj.append(SubspaceState(float(np.linalg.norm(psi[mask])), float(np.linalg.norm(psi[~mask]))))
    dist = psi ** 2
    return QaaResult(p, m, float(dist[mask].sum()), dist, tuple(traj))


def measure(result: QaaResult, rng: np.random.Generator, shots: int = 1) -> np.ndarray:
    """Sample basis indices from a simulated final distribution."""
    if result.distribution is None:
        raise ValueError("no per-key distribution to sample")
    d = result.distribution / result.distribution.sum()
    return rng.choice(d.size, size=shots, p=d)


# -- candidate combinatorics ----------------------------------------------------------
def expected_distinct(n: float, runs: float) -> float:
    """Expected number of distinct values in ``runs`` uniform draws from ``n``."""
    if n < 1 or runs < 1:
        raise ValueError("n and runs must be >= 1")
    return n * -math.expm1(runs * math.log1p(-1 / n)) if n > 1 else 1.0


def expected_distinct_log2(n_log2: float, runs_log2: float) -> float:
    return math.log2(expected_distinct(2.0 ** n_log2, 2.0 ** runs_log2))


def distinct_variance(n: float, runs: float) -> float:
    """Variance of the number of distinct values in ``runs`` uniform draws from ``n``."""
    if n < 1 or runs < 1:
        raise ValueError("n and runs must be >= 1")
    if n == 1:
        return 0.0
    q1 = (1 - 1 / n) ** runs
    q2 = (1 - 2 / n) ** runs
    return max(n * (n - 1) * q2 + n * q1 - (n * q1) ** 2, 0.0)
