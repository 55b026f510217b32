"""Sampling-point sets and their optimality conditions.

Generators produce the special point sets whose distortion is known in
closed form (the half-Landau grid, its shifted-union extension between half
the Landau rate and the Landau rate, the explicit upper-bound construction,
and the binary-expansion family), and checkers test arbitrary schemes
against the three optimality conditions:

* ``lemma1-pairwise``  - every pairwise distance lies on the T/N lattice or
  on the odd multiples of T/(2*(N1+N2));
* ``prop4-product``    - sin(pi*N*d/T) * cos(pi*(N1+N2)*d/T) = 0 pairwise;
* ``thm7-expsum``      - sum_i exp(2j*pi*k*t_i/T) = 0 for k in
  {1..N-1} U {2*N1..2*N2}.

All distance tests are circular (mod T): the conditions enter only through
T-periodic trigonometric functions, so wrap-around distances are equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DivisibilityError,
    RateRegimeError,
    SchemeCollisionError,
    SizeOverflowError,
    ValidationError,
)
from .signal import SignalSpec

# Relative tolerance (in units of the period) for lattice membership and
# instant distinctness; exponential sums use 1e-9 * M.
LATTICE_RTOL = 1e-9
EXPSUM_RTOL = 1e-9
_MAX_EXPANSION_BITS = 20


@dataclass(frozen=True)
class SamplingScheme:
    """Ordered set of M distinct sampling instants in [0, T).

    Instants are reduced modulo the period and stored sorted ascending
    (canonical form).  Pairwise circular separation must exceed 1e-9 * T.
    """

    instants: tuple[float, ...]
    period: float

    def __post_init__(self):
        if not self.period > 0:
            raise ValidationError(f"period must be positive, got {self.period}")
        t = np.mod(np.asarray(self.instants, dtype=float), self.period)
        t = np.sort(t)
        object.__setattr__(self, "instants", tuple(float(v) for v in t))
        if t.size > 1:
            gaps = np.diff(np.concatenate([t, [t[0] + self.period]]))
            if gaps.min() <= LATTICE_RTOL * self.period:
                raise ValidationError(
                    "sampling instants must be pairwise distinct "
                    f"(min circular gap {gaps.min():.3e} <= 1e-9 * T)"
                )

    @property
    def m(self) -> int:
        return len(self.instants)

    def array(self) -> np.ndarray:
        return np.asarray(self.instants)

    def to_json(self) -> list[float]:
        return list(self.instants)

    @classmethod
    def from_json(cls, obj, period: float) -> "SamplingScheme":
        return cls(tuple(float(v) for v in obj), period)


@dataclass(frozen=True)
class OptimalityVerdict:
    """Result of testing a scheme against one optimality condition."""

    satisfied: bool
    worst_violation: float
    condition_tag: str
    tolerance: float

    def to_json(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "worst_violation": self.worst_violation,
            "condition_tag": self.condition_tag,
            "tolerance": self.tolerance,
        }


def uniform_points(m: int, period: float) -> SamplingScheme:
    """Uniform sampling at rate M: {0, T/M, ..., (M-1)T/M}."""
    if m < 1:
        raise ValidationError(f"need M >= 1, got {m}")
    return SamplingScheme(tuple(i * period / m for i in range(m)), period)


def half_landau_points(
    m: int, spec: SignalSpec, offset_tau: float = 0.0
) -> SamplingScheme:
    """First M points of the shifted half-Landau grid {tau + k*T/N} mod T.

    Any M <= N points of this grid achieve the optimal distortion for
    rates up to half the Landau rate, for every noise level.
    """
    n = spec.n_harmonics
    if m > n:
        raise RateRegimeError(f"half-Landau grid has N={n} points; M={m} > N")
    if m < 1:
        raise ValidationError(f"need M >= 1, got {m}")
    t = spec.period
    return SamplingScheme(tuple(offset_tau + k * t / n for k in range(m)), t)


def _theorem6_union(spec: SignalSpec) -> list[float]:
    n = spec.n_harmonics
    t = spec.period
    shift = t / (2 * (spec.n1 + spec.n2))
    grid = [k * t / n for k in range(n)]
    return sorted(grid + [g + shift for g in grid])


def theorem6_points(m: int, spec: SignalSpec) -> SamplingScheme:
    """M points from the union of the T/N grid and its T/(2(N1+N2)) shift.

    Valid between half the Landau rate and the Landau rate (N < M <= 2N)
    when N divides 2*N1 - 1; then every pair of points in the union
    satisfies the lemma1 lattice conditions, so any M of the 2N points are
    optimal.  The first M in ascending order are returned.
    """
    n = spec.n_harmonics
    if not n < m <= 2 * n:
        raise RateRegimeError(f"need N < M <= 2N with N={n}, got M={m}")
    if (2 * spec.n1 - 1) % n != 0:
        raise DivisibilityError(
            f"construction requires N | 2*N1-1; N={n} does not divide "
            f"{2 * spec.n1 - 1}"
        )
    return SamplingScheme(tuple(_theorem6_union(spec)[:m]), spec.period)


def theorem6_upper_points(m: int, spec: SignalSpec) -> SamplingScheme:
    """Explicit upper-bound construction for N < M <= 2N.

    The N-point grid {k*T/N} plus the first M-N odd half-grid points
    {T/2N, 3T/2N, ..., (2M-2N-1)T/2N}.
    """
    n = spec.n_harmonics
    if not n < m <= 2 * n:
        raise RateRegimeError(f"need N < M <= 2N with N={n}, got M={m}")
    t = spec.period
    pts = [k * t / n for k in range(n)]
    pts += [(2 * j + 1) * t / (2 * n) for j in range(m - n)]
    return SamplingScheme(tuple(pts), t)


def condition_harmonics(spec: SignalSpec) -> np.ndarray:
    """The index set {1..N-1} U {2*N1..2*N2} of the exponential-sum test.

    A true set union: the two ranges overlap whenever 2*N1 <= N-1.
    """
    n = spec.n_harmonics
    return np.union1d(np.arange(1, n), np.arange(2 * spec.n1, 2 * spec.n2 + 1))


def binary_expansion_points(spec: SignalSpec) -> SamplingScheme:
    """2^|K| nonuniform points t_i = sum_r b_r * T/(2*k_r) mod T.

    The bits b_r are the binary expansion of the point index over the
    condition set K = {1..N-1} U {2*N1..2*N2}; the resulting scheme nulls
    every exponential sum of the thm7 condition exactly (product identity).
    """
    k_set = condition_harmonics(spec)
    if k_set.size > _MAX_EXPANSION_BITS:
        raise SizeOverflowError(
            f"|K| = {k_set.size} exceeds the 2^{_MAX_EXPANSION_BITS} guard"
        )
    t = spec.period
    m = 1 << k_set.size
    idx = np.arange(m)
    bits = (idx[:, None] >> np.arange(k_set.size)[None, :]) & 1
    pts = np.mod(bits @ (t / (2.0 * k_set)), t)
    pts_sorted = np.sort(pts)
    gaps = np.diff(np.concatenate([pts_sorted, [pts_sorted[0] + t]]))
    if m > 1 and gaps.min() <= LATTICE_RTOL * t:
        raise SchemeCollisionError(
            "binary-expansion instants collide after reduction mod T"
        )
    return SamplingScheme(tuple(pts), t)


def _pairwise_circular_distances(scheme: SamplingScheme) -> np.ndarray:
    t = scheme.array()
    diff = np.abs(t[:, None] - t[None, :])
    diff = np.minimum(diff, scheme.period - diff)
    iu = np.triu_indices(len(t), k=1)
    return diff[iu]


def _lattice_distance(d: np.ndarray, step: float, offset: float = 0.0) -> np.ndarray:
    """Distance from each d to the lattice {offset + m*step, m integer}."""
    r = np.mod(d - offset, step)
    return np.minimum(r, step - r)


def check_lemma1_conditions(
    scheme: SamplingScheme, spec: SignalSpec
) -> OptimalityVerdict:
    """Pairwise lattice condition for tightness of the first lower bound.

    Each circular pairwise distance must lie (within 1e-9 * T) on
    {m1 * T/N} or on the odd multiples {(2*m2+1) * T/(2*(N1+N2))}.
    """
    tol = LATTICE_RTOL * spec.period
    d = _pairwise_circular_distances(scheme)
    if d.size == 0:
        return OptimalityVerdict(True, 0.0, "lemma1-pairwise", tol)
    n = spec.n_harmonics
    half_gap = spec.period / (2 * (spec.n1 + spec.n2))
    dist1 = _lattice_distance(d, spec.period / n)
    dist2 = _lattice_distance(d, 2 * half_gap, offset=half_gap)
    worst = float(np.minimum(dist1, dist2).max())
    return OptimalityVerdict(worst <= tol, worst, "lemma1-pairwise", tol)


def check_prop4_condition(
    scheme: SamplingScheme, spec: SignalSpec
) -> OptimalityVerdict:
    """Pairwise product condition sin(pi*N*d/T) * cos(pi*(N1+N2)*d/T) = 0."""
    tol = 1e-9
    d = _pairwise_circular_distances(scheme)
    if d.size == 0:
        return OptimalityVerdict(True, 0.0, "prop4-product", tol)
    x = np.pi * d / spec.period
    prod = np.abs(np.sin(spec.n_harmonics * x) * np.cos((spec.n1 + spec.n2) * x))
    worst = float(prod.max())
    return OptimalityVerdict(worst <= tol, worst, "prop4-product", tol)


def check_thm7_condition(
    scheme: SamplingScheme, spec: SignalSpec
) -> OptimalityVerdict:
    """Exponential-sum condition for tightness of the second lower bound.

    Requires |sum_i exp(2j*pi*k*t_i/T)| <= 1e-9 * M for every k in
    {1..N-1} U {2*N1..2*N2}.
    """
    m = scheme.m
    tol = EXPSUM_RTOL * max(m, 1)
    k = condition_harmonics(spec)
    if m == 0 or k.size == 0:
        return OptimalityVerdict(True, 0.0, "thm7-expsum", tol)
    phase = np.exp(
        2j * np.pi * np.multiply.outer(k, scheme.array()) / spec.period
    )
    worst = float(np.abs(phase.sum(axis=1)).max())
    return OptimalityVerdict(worst <= tol, worst, "thm7-expsum", tol)


def uniform_is_thm7_optimal(m: int, spec: SignalSpec) -> bool:
    """Whether uniform sampling at rate M nulls every condition harmonic.

    True iff no k in {1..N-1} U {2*N1..2*N2} is divisible by M; guaranteed
    whenever M > 2*N2 (above the Nyquist rate).
    """
    if m < 1:
        raise ValidationError(f"need M >= 1, got {m}")
    return not any(int(k) % m == 0 for k in condition_harmonics(spec))
