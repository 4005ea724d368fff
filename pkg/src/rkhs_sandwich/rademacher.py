"""Rademacher averages, sequence norms, and obstruction scans.

A scan takes an ObstructionRecipe (emitted with an Infeasible verdict),
builds the named witness family at each delta, computes the type or cotype
ratio between the sequence norm and the Rademacher average, and fits the
blow-up exponent from the log-log series.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .bumps import SignedSum, SmoothBumpMember, indicator_partition, tent_family
from .norms import DEFAULT_CONFIG, NormFunctional, QuadratureConfig, hoelder_norm
from .packing import greedy_packing
from .spaces import DomainSpec


class ScanError(ValueError):
    pass


class DomainTooSmallError(ScanError):
    pass


class ModeError(ValueError):
    pass


@dataclass(frozen=True)
class RademacherEstimate:
    value: float
    stderr: Optional[float]  # None in exhaustive mode
    mode: str
    patterns: int

    def __float__(self) -> float:
        return self.value


def _members_of(family) -> List:
    if hasattr(family, "members"):
        return list(family.members)
    return list(family)


def rademacher_norm(family, functional: NormFunctional, domain: DomainSpec,
                    mode: str = "exhaustive",
                    config: QuadratureConfig = DEFAULT_CONFIG,
                    seed: Optional[int] = None) -> RademacherEstimate:
    """E || sum_i eps_i f_i ||_F over independent uniform signs.

    Exhaustive mode averages all 2^n patterns (n <= 20); monte-carlo mode
    draws config.mc_samples patterns from a seeded generator and reports the
    standard error of the mean.
    """
    members = _members_of(family)
    n = len(members)
    if n == 0:
        raise ValueError("empty family")
    if mode == "exhaustive":
        if n > 20:
            raise ModeError(f"exhaustive mode supports n <= 20, got {n}")
        vals = [functional(SignedSum(members, signs), domain, config)
                for signs in itertools.product((1, -1), repeat=n)]
        return RademacherEstimate(float(np.mean(vals)), None, "exhaustive", len(vals))
    if mode == "monte-carlo":
        rng = np.random.default_rng(seed)
        vals = []
        for _ in range(config.mc_samples):
            signs = [int(s) for s in rng.choice((1, -1), size=n)]
            vals.append(functional(SignedSum(members, signs), domain, config))
        vals = np.asarray(vals)
        stderr = float(np.std(vals, ddof=1) / math.sqrt(len(vals))) \
            if len(vals) > 1 else 0.0
        return RademacherEstimate(float(np.mean(vals)), stderr,
                                  "monte-carlo", len(vals))
    raise ModeError(f"unknown mode {mode!r}")


def seq_l2_norm(family, functional: NormFunctional, domain: DomainSpec,
                config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """(sum_i ||f_i||_F^2)^(1/2)."""
    members = _members_of(family)
    return math.sqrt(sum(functional(m, domain, config) ** 2 for m in members))


@dataclass(frozen=True)
class ScanSeries:
    points: Tuple[Tuple[float, int, float], ...]  # (delta, n, ratio)
    fitted_slope: float
    residual: float
    mode: str
    log_axis: str  # "1/delta" or "n"

    def to_csv(self) -> str:
        lines = ["delta,n,ratio,mode"]
        for delta, n, ratio in self.points:
            lines.append(f"{delta},{n},{ratio},{self.mode}")
        return "\n".join(lines) + "\n"


def _fit(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    coeffs, res = np.polyfit(xs, ys, 1, full=True)[:2]
    residual = float(res[0]) if len(res) else 0.0
    return float(coeffs[0]), residual


def _check_deltas(deltas: List[Fraction]) -> None:
    if len(deltas) < 2:
        raise ScanError("a scan needs at least two deltas")
    if any(not 0 < dl <= Fraction(1, 2) for dl in deltas):
        raise ScanError("deltas must lie in (0, 1/2]")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise ScanError("deltas must be strictly decreasing")


def _ratio(mode: str, rad_e: float, seq_e: float, rad_f: float,
           seq_f: float) -> float:
    # type-2 puts the F-side Rademacher average over the E-side sequence
    # norm; cotype-2 puts the F-side sequence norm over the E-side average
    if mode == "type2":
        return rad_f / seq_e
    return seq_f / rad_e


def _pattern_budget(n: int, config: QuadratureConfig) -> int:
    # keep total functional evaluations bounded for large families
    if n * config.mc_samples <= 20000:
        return config.mc_samples
    return max(4, 20000 // n)


def scan(recipe, E_functional: NormFunctional, F_functional: NormFunctional,
         deltas: Sequence, domain: Optional[DomainSpec] = None,
         seed: Optional[int] = None,
         config: QuadratureConfig = DEFAULT_CONFIG) -> ScanSeries:
    """Evaluate the blow-up ratio of an obstruction recipe along deltas.

    The fitted slope estimates recipe.predicted_exponent; the log axis is n
    for sequence-space recipes and 1/delta otherwise.
    """
    if recipe.predicted_exponent <= 0:
        raise ScanError("scan requires a strictly positive predicted exponent")
    deltas = [Fraction(dl) for dl in deltas]
    _check_deltas(deltas)
    c = recipe.construction
    if c == "lp-unit-vectors":
        return _scan_unit_vectors(recipe, deltas)
    if c == "Lp-indicator-partition":
        return _scan_indicators(recipe, deltas)
    if c == "hoelder-tent-bumps":
        if domain is None:
            raise ScanError("tent-bump scans need an explicit domain")
        return _scan_tents(recipe, E_functional, F_functional, deltas, domain,
                           seed, config)
    if c == "smooth-scaled-bumps":
        return _scan_smooth(recipe, E_functional, F_functional, deltas, domain,
                            seed, config)
    raise ScanError(f"unknown construction {c!r}")


def _scan_unit_vectors(recipe, deltas) -> ScanSeries:
    p, q = float(recipe.params["p"]), float(recipe.params["q"])
    pts = []
    for dl in deltas:
        n = round(1 / dl)
        if n < 2:
            raise DomainTooSmallError("unit-vector family needs n >= 2")
        ones = np.ones(n)
        rad_e = float(np.linalg.norm(ones, p))  # sign-independent
        rad_f = float(np.linalg.norm(ones, q))
        seq = math.sqrt(n)  # each basis vector has norm 1 in any lp
        pts.append((float(dl), n,
                    _ratio(recipe.mode, rad_e, seq, rad_f, seq)))
    slope, res = _fit([math.log(n) for _, n, _ in pts],
                      [math.log(r) for _, _, r in pts])
    return ScanSeries(tuple(pts), slope, res, recipe.mode, "n")


def _scan_indicators(recipe, deltas) -> ScanSeries:
    p, q = float(recipe.params["p"]), float(recipe.params["q"])
    d = int(recipe.params["d"])
    pts = []
    for dl in deltas:
        n_grid = round(1 / dl)
        if n_grid < 2:
            raise DomainTooSmallError("indicator partition needs >= 2 cells per axis")
        members = indicator_partition(d, n_grid)
        m = len(members)
        cell_vol = n_grid ** (-d)
        # |sum eps_i 1_{A_i}| is identically 1 on the cube for every pattern
        rad_e = rad_f = 1.0
        seq_e = math.sqrt(m) * cell_vol ** (1 / p)
        seq_f = math.sqrt(m) * cell_vol ** (1 / q)
        pts.append((float(dl), m,
                    _ratio(recipe.mode, rad_e, seq_e, rad_f, seq_f)))
    slope, res = _fit([math.log(1 / dl) for dl, _, _ in pts],
                      [math.log(r) for _, _, r in pts])
    return ScanSeries(tuple(pts), slope, res, recipe.mode, "1/delta")


def _tent_cloud(centers: np.ndarray, width: float, alpha: float,
                domain: DomainSpec) -> np.ndarray:
    """Centers plus one in-support witness per bump at distance width^(1/alpha)."""
    r = width ** (1.0 / alpha)
    witness = centers.copy()
    # step along the first axis, flipping direction near the far face
    step = np.where(witness[:, 0] + r < 1.0, r, -r)
    witness[:, 0] += step
    return np.vstack([centers, witness])


def _as_fraction(x) -> Fraction:
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(x.numerator, x.denominator)
    return Fraction(x)


def _scan_tents(recipe, E_functional, F_functional, deltas, domain, seed,
                config) -> ScanSeries:
    alpha_frac = _as_fraction(recipe.params["alpha"])
    alpha = float(alpha_frac)
    pts = []
    rng = np.random.default_rng(seed)
    for dl in deltas:
        packing = greedy_packing(domain, dl, alpha_frac)
        if packing.count < 2:
            raise DomainTooSmallError(
                f"packing at delta={dl} yields fewer than 2 centers")
        width = float(dl) / 3  # centers are then 3*width apart in d^alpha
        fam = tent_family(domain, dl / 3, alpha_frac,
                          centers=packing.centers_array())
        n = fam.n
        cloud = _tent_cloud(fam.centers, width, alpha, domain)
        e_fun = replace(E_functional, points=cloud)
        members = fam.members
        # per-member F norm on its own center/witness pair
        seq_f = math.sqrt(sum(
            replace(F_functional, points=cloud[[i, n + i]])(members[i], domain,
                                                            config) ** 2
            for i in range(n)))
        budget = _pattern_budget(n, config)
        vals = []
        for _ in range(budget):
            signs = [int(s) for s in rng.choice((1, -1), size=n)]
            vals.append(e_fun(SignedSum(members, signs), domain, config))
        rad_e = float(np.mean(vals))
        pts.append((float(dl), n, _ratio(recipe.mode, rad_e, math.nan,
                                         math.nan, seq_f)))
    slope, res = _fit([math.log(1 / dl) for dl, _, _ in pts],
                      [math.log(r) for _, _, r in pts])
    return ScanSeries(tuple(pts), slope, res, recipe.mode, "1/delta")


def _scan_smooth(recipe, E_functional, F_functional, deltas, domain, seed,
                 config) -> ScanSeries:
    from .bumps import smooth_family
    d = int(recipe.params["d"])
    rng = np.random.default_rng(seed)
    pts = []
    for dl in deltas:
        if recipe.params.get("unbounded"):
            # fixed-size bumps marching along the first axis; n grows with 1/delta
            n = round(1 / dl)
            if n < 2:
                raise DomainTooSmallError("unbounded-domain family needs n >= 2")
            centers = np.zeros((n, d))
            centers[:, 0] = 3.0 * np.arange(n)
            members = [SmoothBumpMember(d, c, 1.0) for c in centers]
            fam = members
        else:
            fam = smooth_family(d, dl)
            members = fam.members
            n = len(members)
            if n < 2:
                raise DomainTooSmallError(
                    f"bump packing at delta={dl} yields fewer than 2 members")
            # the family lives on its own ball regardless of the queried
            # domain; evaluate the norms where the bumps actually sit
            domain = fam.domain
        seq_e = math.sqrt(sum(E_functional(m, domain, config) ** 2
                              for m in members))
        seq_f = math.sqrt(sum(F_functional(m, domain, config) ** 2
                              for m in members))
        budget = _pattern_budget(n, config)
        rad_vals_e, rad_vals_f = [], []
        for _ in range(budget):
            signs = [int(s) for s in rng.choice((1, -1), size=n)]
            h = SignedSum(members, signs)
            if recipe.mode == "type2":
                rad_vals_f.append(F_functional(h, domain, config))
            else:
                rad_vals_e.append(E_functional(h, domain, config))
        rad_e = float(np.mean(rad_vals_e)) if rad_vals_e else math.nan
        rad_f = float(np.mean(rad_vals_f)) if rad_vals_f else math.nan
        pts.append((float(dl), n, _ratio(recipe.mode, rad_e, seq_e, rad_f, seq_f)))
    slope, res = _fit([math.log(1 / dl) for dl, _, _ in pts],
                      [math.log(r) for _, _, r in pts])
    return ScanSeries(tuple(pts), slope, res, recipe.mode, "1/delta")
