"""lp quasi-norm minimization over |Phi x| = b, exact by vertex enumeration or by IRLS."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import EmptyVertexSet, InvalidInputs, PNotBelowPstar
from .instance import Instance, enumerate_sign_patterns, negate, signed_rhs
from .l0 import solve_l0_phaseless
from .polytope import pseudo_extreme_points

# relative window in which double-precision objective values are treated as
# possibly tied and re-examined exactly / in extended precision
TIE_WINDOW = 1e-12
_HP_LEVELS = (256, 1024)


@dataclass
class LpSolveResult:
    p: float
    optimal_value: float
    solutions: list
    lifted_solutions: list
    method: str
    slack_optima: list = field(default_factory=list)


def lp_objective(y, p: float) -> float:
    """Sum of y_i ** p with 0 ** p taken as 0."""
    return sum(float(v) ** p for v in y if v != 0)


def _objective_hp(key: tuple, p: float, prec: int):
    with mpmath.workprec(prec):
        pp = mpmath.mpf(p)
        total = mpmath.mpf(0)
        for v in key:
            total += mpmath.power(mpmath.mpf(v.numerator) / v.denominator, pp)
        return total


def _check_p(p: float):
    if not 0 < p < 1:
        raise InvalidInputs(f"p must lie in (0, 1), got {p!r}")


def _argmin_exact(points, p: float):
    """Indices of every point attaining the minimal objective, ties decided exactly."""
    values = [lp_objective(y, p) for _, y in points]
    fmin = min(values)
    window = fmin * (1 + TIE_WINDOW) if fmin > 0 else 0.0
    near = [i for i, v in enumerate(values) if v <= window]
    # equal multisets of nonzero y entries give identical objectives exactly
    groups: dict = {}
    for i in near:
        key = tuple(sorted(v for v in points[i][1] if v != 0))
        groups.setdefault(key, []).append(i)
    keys = list(groups)
    for prec in _HP_LEVELS:
        if len(keys) == 1:
            break
        hp = {k: _objective_hp(k, p, prec) for k in keys}
        best = min(hp.values())
        with mpmath.workprec(prec):
            tol = mpmath.ldexp(max(best, mpmath.mpf(1)), -(prec - 32))
            keys = [k for k in keys if hp[k] - best <= tol]
    winners = sorted(i for k in keys for i in groups[k])
    return winners, min(values[i] for i in winners)


def solve_lp_exact(instance: Instance, p: float, vset) -> LpSolveResult:
    """Global lp optima read off the pseudo-extreme points of the lifted set."""
    _check_p(p)
    if not vset.points:
        raise EmptyVertexSet("no pseudo-extreme points to evaluate")
    winners, value = _argmin_exact(vset.points, p)
    lifted = [vset.points[i] for i in winners]
    tight = [(x, y) for x, y in lifted if tuple(abs(v) for v in x) == tuple(y)]
    slack = [(x, y) for x, y in lifted if tuple(abs(v) for v in x) != tuple(y)]
    return LpSolveResult(
        p=p,
        optimal_value=value,
        solutions=sorted({x for x, _ in tight}),
        lifted_solutions=tight,
        method="exact-enumeration",
        slack_optima=slack,
    )


# --- heuristic --------------------------------------------------------------

IRLS_DELTA0 = 1.0
IRLS_DELTA_FACTOR = 0.1
IRLS_STAGES = 8
IRLS_INNER = 50


def _irls(Phi: np.ndarray, b: np.ndarray, p: float, x: np.ndarray, delta0: float, factor: float,
          stages: int, inner: int) -> np.ndarray:
    delta = delta0
    for _ in range(stages):
        for _ in range(inner):
            d = (x * x + delta) ** (1 - p / 2)  # inverse weights
            PD = Phi * d
            x = d * (Phi.T @ np.linalg.solve(PD @ Phi.T, b))
        delta *= factor
    return x


def _polish(Phi: np.ndarray, b: np.ndarray, x: np.ndarray, p: float):
    """Snap to basic solutions on the largest entries of x; return the best feasible one."""
    m = Phi.shape[0]
    scale = max(1.0, float(np.max(np.abs(b))))
    order = np.argsort(-np.abs(x), kind="stable")
    best_x, best_v = x, float(np.sum(np.abs(x) ** p))
    for k in range(1, m + 1):
        idx = np.sort(order[:k])
        sub = Phi[:, idx]
        if np.linalg.matrix_rank(sub) < k:
            continue
        xs, *_ = np.linalg.lstsq(sub, b, rcond=None)
        if np.max(np.abs(sub @ xs - b)) > 1e-9 * scale:
            continue
        cand = np.zeros_like(x)
        cand[idx] = xs
        v = float(np.sum(np.abs(cand[cand != 0]) ** p))
        if v < best_v:
            best_x, best_v = cand, v
    return best_x, best_v


def solve_lp_heuristic(instance: Instance, p: float, restarts: int = 32, seed: int = 0,
                       delta0: float = IRLS_DELTA0, delta_factor: float = IRLS_DELTA_FACTOR,
                       stages: int = IRLS_STAGES, inner: int = IRLS_INNER) -> LpSolveResult:
    """Multi-start IRLS on smoothed sum (x_i^2 + delta)^(p/2); no optimality guarantee."""
    _check_p(p)
    n = instance.n
    if instance.is_zero:
        zero = (0.0,) * n
        return LpSolveResult(p=p, optimal_value=0.0, solutions=[zero], lifted_solutions=[(zero, zero)],
                             method="heuristic")
    Phi = np.array([[float(v) for v in row] for row in instance.phi])
    patterns = enumerate_sign_patterns(instance)
    rng = np.random.default_rng(seed)
    _, _, vt = np.linalg.svd(Phi)
    null = vt[instance.m:].T

    best_x, best_v, best_eps = None, np.inf, None
    for _ in range(restarts):
        eps = patterns[rng.integers(len(patterns))]
        b = np.array([float(v) for v in signed_rhs(instance, eps)])
        x_mn = Phi.T @ np.linalg.solve(Phi @ Phi.T, b)
        spread = max(1.0, float(np.max(np.abs(x_mn))))
        x0 = x_mn + null @ (rng.standard_normal(null.shape[1]) * spread)
        x = _irls(Phi, b, p, x0, delta0, delta_factor, stages, inner)
        x, v = _polish(Phi, b, x, p)
        if v < best_v:
            best_x, best_v, best_eps = x, v, eps

    sol = tuple(float(v) + 0.0 for v in best_x)
    # the antipodal branch carries the negated point with the same objective
    sols = sorted({sol, tuple(-v + 0.0 for v in sol)}) if negate(best_eps) != best_eps else [sol]
    return LpSolveResult(
        p=p,
        optimal_value=float(best_v),
        solutions=sols,
        lifted_solutions=[(x, tuple(abs(v) for v in x)) for x in sols],
        method="heuristic",
    )


# --- equivalence check ------------------------------------------------------


@dataclass
class VerificationReport:
    p: float
    passed: bool
    lp_count: int
    l0_count: int
    strict: bool
    missing: list = field(default_factory=list)


def verify_equivalence(instance: Instance, p: float, cert, l0_set=None, lp_result=None,
                       vset=None) -> VerificationReport:
    """Check that every exact lp optimum is an l0 optimum, for p below the certified threshold."""
    if not 0 < p:
        raise InvalidInputs(f"p must be positive, got {p!r}")
    if p >= cert.pstar:
        raise PNotBelowPstar(p, cert.pstar)
    if l0_set is None:
        l0_set = solve_l0_phaseless(instance)
    if lp_result is None:
        if vset is None:
            vset = pseudo_extreme_points(instance, cert.r0 if cert.r0 > 0 else Fraction(1))
        lp_result = solve_lp_exact(instance, p, vset)
    l0_members = set(l0_set.solutions)
    missing = [x for x in lp_result.solutions if x not in l0_members]
    return VerificationReport(
        p=p,
        passed=not missing and bool(lp_result.solutions),
        lp_count=len(lp_result.solutions),
        l0_count=len(l0_members),
        strict=len(set(lp_result.solutions)) < len(l0_members),
        missing=missing,
    )
