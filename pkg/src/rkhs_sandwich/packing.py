"""Greedy and exact packing numbers in Euclidean and finite metric domains.

Candidate points live on an integer lattice (coordinates are integer
multiples of a common denominator), so the pairwise >= delta constraint in
the power metric d^alpha is an exact integer comparison even though the
elimination loop runs vectorized over floats-free int64 arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .spaces import DomainSpec


class PackingError(ValueError):
    pass


class DegenerateFitError(PackingError):
    pass


@dataclass(frozen=True)
class PackingResult:
    delta: Fraction
    alpha: Fraction
    centers: Tuple[Tuple[Fraction, ...], ...]
    count: int
    maximality_certificate: bool
    exact: bool = False  # True when produced by the brute-force oracle

    def centers_array(self) -> np.ndarray:
        return np.array([[float(c) for c in pt] for pt in self.centers], dtype=float)

    def to_csv(self) -> str:
        lines = [",".join(f"x{i}" for i in range(len(self.centers[0])))]
        for pt in self.centers:
            lines.append(",".join(str(float(c)) for c in pt))
        return "\n".join(lines) + "\n"


def _euclidean_radius(delta: Fraction, alpha: Fraction) -> float:
    # packing radius in d^alpha corresponds to Euclidean radius delta^(1/alpha)
    return float(delta) ** (1.0 / float(alpha))


def _min_sq_lattice(delta: Fraction, alpha: Fraction, den: int) -> int:
    """Smallest integer I such that a lattice pair with squared Euclidean
    distance I/den^2 satisfies dist^alpha >= delta.  Exact."""
    a, b = alpha.numerator, alpha.denominator
    # (I/den^2)^a >= delta^(2b)  <=>  I^a >= delta^(2b) * den^(2a)
    target = Fraction(delta) ** (2 * b) * Fraction(den) ** (2 * a)
    guess = max(1, math.floor(float(target) ** (1.0 / a)) - 2)
    i = guess
    while Fraction(i) ** a < target:
        i += 1
    while i > 1 and Fraction(i - 1) ** a >= target:
        i -= 1
    return i


def _cube_candidates(d: int, den: int) -> np.ndarray:
    axis = np.arange(1, den, dtype=np.int64)  # strictly inside the open cube
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _ball_candidates(d: int, den: int, radius: Fraction) -> np.ndarray:
    lim = math.ceil(float(radius) * den)
    axis = np.arange(-lim, lim + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    # keep the closed ball: |k|^2 <= (radius*den)^2, exact for integer k
    r2 = Fraction(radius) ** 2 * den ** 2
    keep = (pts.astype(object) ** 2).sum(axis=1) <= r2
    return pts[np.asarray(keep, dtype=bool)]


def _grid_denominator(delta: Fraction, alpha: Fraction, spacing_divisor: int = 4) -> int:
    r = _euclidean_radius(delta, alpha)
    return max(2, math.ceil(spacing_divisor / r))


def _lattice_greedy(pts: np.ndarray, min_sq: int) -> np.ndarray:
    """Greedy insertion in lexicographic order; returns indices of centers.

    Points are sorted by (x0, x1, ...), so candidates conflicting with a
    chosen center lie in a contiguous x0-window, which keeps the elimination
    pass local.
    """
    order = np.lexsort(pts.T[::-1])  # sort by x0, then x1, ...
    pts = pts[order]
    n = len(pts)
    x0 = pts[:, 0]
    window = math.isqrt(max(0, min_sq - 1))  # kill needs sq < min_sq
    alive = np.ones(n, dtype=bool)
    chosen: List[int] = []
    i = 0
    while i < n:
        if not alive[i]:
            i += 1
            continue
        chosen.append(order[i])
        lo = np.searchsorted(x0, pts[i, 0] - window, side="left")
        hi = np.searchsorted(x0, pts[i, 0] + window, side="right")
        diff = pts[lo:hi] - pts[i]
        sq = (diff * diff).sum(axis=1)
        alive[lo:hi] &= sq >= min_sq
        i += 1
    return np.array(chosen, dtype=np.int64)


def _as_fraction_points(pts: np.ndarray, den: int) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(c), den) for c in pt) for pt in pts)


def _candidates_for(domain: DomainSpec, delta: Fraction, alpha: Fraction,
                    den: Optional[int]) -> Tuple[np.ndarray, int]:
    if domain.kind == "unit-cube":
        den = den or _grid_denominator(delta, alpha)
        return _cube_candidates(domain.dimension, den), den
    if domain.kind == "euclidean-ball":
        den = den or _grid_denominator(delta, alpha)
        return _ball_candidates(domain.dimension, den, domain.radius), den
    raise PackingError(f"no candidate grid for domain kind {domain.kind!r}")


def greedy_packing(domain: DomainSpec, delta, alpha=1,
                   den: Optional[int] = None) -> PackingResult:
    """Greedy maximal delta-packing of the domain in the metric d^alpha.

    The count is a certified lower bound for P(X, d^alpha, delta); the
    certificate records that every grid candidate lies within delta of a
    chosen center (true by construction of the elimination loop).
    """
    delta, alpha = Fraction(delta), Fraction(alpha)
    if delta <= 0:
        raise PackingError("delta must be positive")
    if not (0 < alpha <= 1):
        raise PackingError("metric power alpha must lie in (0, 1]")

    if domain.kind == "finite-metric-set":
        return _finite_metric_greedy(domain, delta, alpha)
    if not domain.bounded:
        raise PackingError("packing requires a bounded or finite domain")

    pts, den = _candidates_for(domain, delta, alpha, den)
    if len(pts) == 0:
        raise PackingError("empty candidate set")
    min_sq = _min_sq_lattice(delta, alpha, den)
    chosen = _lattice_greedy(pts, min_sq)
    centers = _as_fraction_points(pts[chosen], den)
    return PackingResult(delta, alpha, centers, len(centers), True)


def _finite_metric_greedy(domain: DomainSpec, delta: Fraction,
                          alpha: Fraction) -> PackingResult:
    table = domain.metric_table
    n = len(table)
    a, b = alpha.numerator, alpha.denominator
    thr = delta ** b

    def far(i: int, j: int) -> bool:
        return table[i][j] ** a >= thr  # d^alpha >= delta, exact

    chosen: List[int] = []
    for i in range(n):
        if all(far(i, j) for j in chosen):
            chosen.append(i)
    centers = tuple((Fraction(i),) for i in chosen)
    return PackingResult(delta, alpha, centers, len(chosen), True)


def brute_force_packing(domain: DomainSpec, delta, alpha=1,
                        den: Optional[int] = None) -> PackingResult:
    """Exact maximum packing over the candidate set (<= 24 candidates)."""
    delta, alpha = Fraction(delta), Fraction(alpha)
    if domain.kind == "finite-metric-set":
        n = len(domain.metric_table)
        a, b = alpha.numerator, alpha.denominator
        thr = delta ** b
        compat = [[domain.metric_table[i][j] ** a >= thr for j in range(n)]
                  for i in range(n)]
        pts = None
    else:
        pts, den = _candidates_for(domain, delta, alpha, den)
        n = len(pts)
        min_sq = _min_sq_lattice(delta, alpha, den)
        diff = pts[:, None, :] - pts[None, :, :]
        sq = (diff * diff).sum(axis=2)
        compat = (sq >= min_sq).tolist()
    if n > 24:
        raise PackingError(f"brute-force mode limited to 24 candidates, got {n}")

    # maximum independent set in the conflict graph, via branch and bound
    masks = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and compat[i][j]:
                masks[i] |= 1 << j
    best: List[int] = []

    def extend(sel: List[int], allowed: int, start: int) -> None:
        nonlocal best
        if len(sel) + bin(allowed >> start).count("1") <= len(best):
            return
        for i in range(start, n):
            if allowed & (1 << i):
                extend(sel + [i], allowed & masks[i], i + 1)
        if len(sel) > len(best):
            best = sel

    extend([], (1 << n) - 1, 0)
    if pts is None:
        centers = tuple((Fraction(i),) for i in best)
    else:
        centers = _as_fraction_points(pts[np.array(best, dtype=np.int64)], den)
    return PackingResult(delta, alpha, centers, len(best), True, exact=True)


def alpha_transform_check(domain: DomainSpec, delta, alpha) -> bool:
    """P(X, d^alpha, delta) = P(X, d, delta^(1/alpha)) on a fixed candidate
    grid: run both greedy packings over the same candidates and compare."""
    delta, alpha = Fraction(delta), Fraction(alpha)
    if domain.kind == "finite-metric-set":
        left = greedy_packing(domain, delta, alpha)
        # d >= delta^(1/alpha)  <=>  d^alpha >= delta: realize the right side by
        # packing with the pure metric at the transformed radius, exactly when
        # the radius is rational; otherwise compare the defining conditions.
        a, b = alpha.numerator, alpha.denominator
        thr = delta ** b
        table = domain.metric_table
        chosen: List[int] = []
        for i in range(len(table)):
            if all(table[i][j] ** a >= thr for j in chosen):
                chosen.append(i)
        return left.count == len(chosen) and \
            [int(c[0]) for c in left.centers] == chosen

    den = _grid_denominator(delta, alpha)
    pts, den = _candidates_for(domain, delta, alpha, den)
    chosen_left = _lattice_greedy(pts, _min_sq_lattice(delta, alpha, den))
    # right side: radius delta^(1/alpha) in the plain Euclidean metric
    a, b = alpha.numerator, alpha.denominator
    rho_pow = Fraction(delta) ** b  # delta^(1/alpha) = rho_pow^(1/a)
    root = _exact_root(rho_pow, a)
    if root is not None:
        min_sq_right = _min_sq_lattice(root, Fraction(1), den)
    else:
        # irrational transformed radius: derive its lattice threshold from the
        # defining inequality dist >= delta^(1/alpha) <=> dist^(2a) >= delta^(2b)
        target = rho_pow ** 2 * Fraction(den) ** (2 * a)
        i = 1
        guess = max(1, math.floor(float(target) ** (1.0 / a)) - 2)
        i = guess
        while Fraction(i) ** a < target:
            i += 1
        while i > 1 and Fraction(i - 1) ** a >= target:
            i -= 1
        min_sq_right = i
    chosen_right = _lattice_greedy(pts, min_sq_right)
    return np.array_equal(chosen_left, chosen_right)


def _exact_root(x: Fraction, k: int) -> Optional[Fraction]:
    """x^(1/k) when it is rational, else None."""
    if k == 1:
        return x

    def iroot(n: int) -> Optional[int]:
        if n == 0:
            return 0
        r = round(n ** (1.0 / k))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** k == n:
                return c
        return None

    num, den_ = iroot(x.numerator), iroot(x.denominator)
    if num is None or den_ is None:
        return None
    return Fraction(num, den_)


def exponent_fit(domain: DomainSpec, deltas: Sequence, alpha=1) -> float:
    """Least-squares slope of log(count) against log(1/delta)."""
    deltas = [Fraction(x) for x in deltas]
    if len(deltas) < 3:
        raise PackingError("exponent fit needs at least 3 deltas")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise PackingError("deltas must be strictly decreasing")
    counts = [greedy_packing(domain, dl, alpha).count for dl in deltas]
    if len(set(counts)) == 1:
        raise DegenerateFitError("identical counts; no exponent information")
    x = np.log([1.0 / float(dl) for dl in deltas])
    y = np.log(counts)
    slope = np.polyfit(x, y, 1)[0]
    return float(slope)
