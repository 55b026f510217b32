"""Exhaustive and sweep-based optimization of sampling instants.

The discrete search enumerates every M-subset of the integer grid
{0, ..., T-1} in lexicographic order and minimizes the coefficient-domain
average distortion D = Tr(C_e)/2.  The sweeps trace D (and V) over a single
free instant or over the sample count M, producing the data behind the
distortion-versus-rate figures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np

from .bounds import lemma1_bounds, lemma2_bounds, thm6_upper
from .errors import (
    NoiseRequiredError,
    SearchSpaceTooLargeError,
    ValidationError,
)
from .estimator import FilterSpec, build_Q, mmse_bundle, pi_route_moments
from .schemes import SamplingScheme, uniform_points
from .signal import DiscreteSignalSpec, SignalSpec

_MAX_CANDIDATES = 10**7
_TIE_RTOL = 1e-9
_BATCH = 4096
_COLLISION_RTOL = 1e-6


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive search over sampling schemes.

    ``ties`` lists every enumerated candidate within 1e-9 relative of the
    minimum, in lexicographic order; ``best_scheme`` is the first of them.
    """

    best_scheme: SamplingScheme
    best_d: float
    ties: tuple[tuple[int, ...], ...]
    candidates: int

    def to_json(self) -> dict:
        return {
            "best_scheme": [int(t) for t in self.best_scheme.instants],
            "best_D": self.best_d,
            "ties": [list(t) for t in self.ties],
            "candidates": self.candidates,
        }


def _distortion_batch(
    outer_products: np.ndarray,
    subsets: np.ndarray,
    inv_cx: np.ndarray,
    sigma2: float,
) -> np.ndarray:
    """D for a batch of index subsets via the coefficient-space route.

    ``outer_products[t]`` is q_t q_t^T for integer instant t; the Gamma
    route needs only their sum over the chosen subset.
    """
    gram = outer_products[subsets].sum(axis=1) / sigma2
    gram += np.diag(inv_cx)[None, :, :]
    ce = np.linalg.inv(gram)
    return 0.5 * np.trace(ce, axis1=1, axis2=2)


def discrete_exhaustive(spec: DiscreteSignalSpec, m: int) -> SearchResult:
    """Minimize D over all M-subsets of the integer instants {0..T-1}.

    Enumeration is lexicographic and the tie list is re-filtered against
    the final minimum, so output is deterministic.  Guarded to C(T, M) <=
    10^7 candidates.
    """
    t_int = int(spec.period)
    if not 1 <= m <= t_int:
        raise ValidationError(f"need 1 <= M <= T = {t_int}, got M={m}")
    if spec.noise_variance <= 0:
        raise NoiseRequiredError("discrete search requires sigma^2 > 0")
    n_candidates = math.comb(t_int, m)
    if n_candidates > _MAX_CANDIDATES:
        raise SearchSpaceTooLargeError(
            f"C({t_int}, {m}) = {n_candidates} exceeds the 10^7 guard"
        )

    grid = SamplingScheme(tuple(float(t) for t in range(t_int)), spec.period)
    q = build_Q(grid, spec)
    outer = np.einsum("ti,tj->tij", q, q)
    inv_cx = 1.0 / spec.variance_vector
    sigma2 = spec.noise_variance

    best = math.inf
    ties: list[tuple[tuple[int, ...], float]] = []
    it = combinations(range(t_int), m)
    while True:
        batch = list(islice(it, _BATCH))
        if not batch:
            break
        d = _distortion_batch(outer, np.asarray(batch), inv_cx, sigma2)
        lo = float(d.min())
        if lo < best:
            best = lo
            ties = [(c, dv) for c, dv in ties if dv <= best * (1 + _TIE_RTOL)]
        keep = d <= best * (1 + _TIE_RTOL)
        ties.extend((batch[i], float(d[i])) for i in np.nonzero(keep)[0])

    tie_schemes = tuple(c for c, dv in ties if dv <= best * (1 + _TIE_RTOL))
    best_scheme = SamplingScheme(
        tuple(float(v) for v in tie_schemes[0]), spec.period
    )
    return SearchResult(
        best_scheme=best_scheme,
        best_d=best,
        ties=tie_schemes,
        candidates=n_candidates,
    )


def discrete_distortion(spec: DiscreteSignalSpec, instants) -> float:
    """Coefficient-domain D for one integer scheme (audit helper)."""
    scheme = SamplingScheme(tuple(float(t) for t in instants), spec.period)
    filt = FilterSpec.allpass(spec)
    return mmse_bundle(spec, filt, scheme).d


def sweep_t2(
    spec: SignalSpec, t1_fixed: float, grid_points: int
) -> np.ndarray:
    """Distortion statistics for two-point schemes {t1, t2}, t2 on a grid.

    Returns rows (t2, D, V) over a uniform grid of (0, T); grid points
    within a circular distance of 1e-6 * T of the fixed instant are skipped
    (near-collision values are valid but dominated, and clutter plots).
    """
    if grid_points < 2:
        raise ValidationError(f"need at least 2 grid points, got {grid_points}")
    period = spec.period
    filt = FilterSpec.allpass(spec)
    rows = []
    for k in range(1, grid_points):
        t2 = k * period / grid_points
        dist = abs(t2 - t1_fixed % period)
        if min(dist, period - dist) < _COLLISION_RTOL * period:
            continue
        scheme = SamplingScheme((t1_fixed, t2), period)
        d, v = pi_route_moments(spec, filt, scheme)
        rows.append((t2, d, v))
    return np.asarray(rows)


def sweep_M(
    spec: SignalSpec, m_max: int, strategies: set[str] | None = None
) -> tuple[list[str], np.ndarray]:
    """Distortion-versus-rate table with an all-pass filter.

    Columns per requested strategy: ``uniform`` (measured D at uniform
    instants), ``bounds`` (the two lower bounds), ``thm6-upper`` (the
    explicit upper bound, defined only for N < M <= 2N, NaN elsewhere).
    Returns (column names, rows).
    """
    known = {"uniform", "bounds", "thm6-upper"}
    strategies = set(strategies) if strategies else known
    unknown = strategies - known
    if unknown:
        raise ValidationError(f"unknown sweep strategies: {sorted(unknown)}")
    if m_max < 1:
        raise ValidationError(f"need M_max >= 1, got {m_max}")
    filt = FilterSpec.allpass(spec)
    n = spec.n_harmonics
    columns = ["M"]
    if "uniform" in strategies:
        columns.append("D_uniform")
    if "bounds" in strategies:
        columns += ["D_lemma1", "D_lemma2"]
    if "thm6-upper" in strategies:
        columns.append("D_thm6_upper")
    rows = np.empty((m_max, len(columns)))
    for m in range(1, m_max + 1):
        row = [float(m)]
        if "uniform" in strategies:
            row.append(
                pi_route_moments(spec, filt, uniform_points(m, spec.period))[0]
            )
        if "bounds" in strategies:
            row.append(lemma1_bounds(spec, m)[0])
            row.append(lemma2_bounds(spec, m)[0])
        if "thm6-upper" in strategies:
            row.append(thm6_upper(spec, m) if n < m <= 2 * n else math.nan)
        rows[m - 1] = row
    return columns, rows
