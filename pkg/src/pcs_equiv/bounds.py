"""Box-bound radii containing every l0 and lp optimum."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact_linalg as la
from .errors import InvalidInputs, NoFullColumnRankSupport
from .instance import Instance, SignPattern, enumerate_sign_patterns, expand_pattern, signed_rhs


@dataclass
class BoundReport:
    c0_eps: dict = field(default_factory=dict)
    c0: Fraction = Fraction(0)
    cp_eps: dict = field(default_factory=dict)
    c1: Fraction = Fraction(0)
    r0: Fraction = Fraction(0)
    s_used: int = 0
    degenerate: bool = False


def c0_eps(instance: Instance, eps: SignPattern, s: int) -> Fraction:
    """Largest least-squares magnitude over all size-``s`` full-column-rank supports.

    Every support of that size counts, not only the ones carrying an optimum.
    """
    b_eps = signed_rhs(instance, eps)
    if all(v == 0 for v in b_eps):
        return Fraction(0)
    if s < 1:
        raise InvalidInputs(f"s must be >= 1 for a nonzero right-hand side, got {s}")
    best = None
    for idx in itertools.combinations(range(instance.n), s):
        sub = la.columns(instance.phi, idx)
        if la.rank(sub) < s:
            continue
        val = la.inf_norm(la.least_squares_full_col_rank(sub, b_eps))
        if best is None or val > best:
            best = val
    if best is None:
        raise NoFullColumnRankSupport(f"no support of size {s} has full column rank")
    return best


def c0(instance: Instance, s: int) -> Fraction:
    return max(c0_eps(instance, eps, s) for eps in enumerate_sign_patterns(instance))


def cp_eps(instance: Instance, eps: SignPattern) -> Fraction:
    """``n`` times the sup-norm of the minimum-norm solution; independent of p."""
    x = la.min_norm_solution(instance.phi, signed_rhs(instance, eps))
    return instance.n * la.inf_norm(x)


def r0(instance: Instance, s: int) -> BoundReport:
    report = BoundReport(s_used=s, degenerate=instance.is_zero)
    for eps in enumerate_sign_patterns(instance):
        c0v = c0_eps(instance, eps, s)
        cpv = cp_eps(instance, eps)
        # both values are invariant under global negation and under flips of
        # zero entries of b
        for full, _ in expand_pattern(instance, eps):
            report.c0_eps[full] = c0v
            report.cp_eps[full] = cpv
    report.c0_eps = dict(sorted(report.c0_eps.items()))
    report.cp_eps = dict(sorted(report.cp_eps.items()))
    report.c0 = max(report.c0_eps.values())
    report.c1 = max(report.cp_eps.values())
    report.r0 = max(report.c0, report.c1)
    return report
