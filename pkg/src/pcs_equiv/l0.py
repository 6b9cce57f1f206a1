"""Exact l0 minimization by support enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact_linalg as la
from .errors import NoUniqueSolution
from .instance import Instance, SignPattern, enumerate_sign_patterns, expand_pattern, signed_rhs


def support(x) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(x) if v != 0)


def canonical(points):
    """Deduplicate and sort exact vectors into a canonical order."""
    return sorted(set(points))


@dataclass
class SparseSolutionSet:
    sparsity: int
    solutions: list
    per_branch: dict = field(default_factory=dict)


def solve_l0_branch(phi: la.Matrix, b_eps) -> tuple[int, list]:
    """Sparsest solutions of ``phi x = b_eps``.

    Supports are scanned by increasing size; only full-column-rank column
    subsets are tried, and a hit must have every entry nonzero.
    """
    m, n = la.shape(phi)
    zero = (Fraction(0),) * n
    if all(v == 0 for v in b_eps):
        return 0, [zero]
    for k in range(1, m + 1):
        hits = []
        for idx in itertools.combinations(range(n), k):
            sub = la.columns(phi, idx)
            if la.rank(sub) < k:
                continue
            try:
                xs = la.solve_unique(sub, b_eps)
            except NoUniqueSolution:
                # full column rank: the only failure mode left is inconsistency
                continue
            if any(v == 0 for v in xs):
                continue
            x = list(zero)
            for i, v in zip(idx, xs):
                x[i] = v
            hits.append(tuple(x))
        if hits:
            return k, canonical(hits)
    raise AssertionError("phi is not full row rank: no solution with <= m nonzeros")


def solve_l0_phaseless(instance: Instance, reduce_symmetry: bool = True) -> SparseSolutionSet:
    branch_results: dict[SignPattern, tuple[int, list]] = {}
    for eps in enumerate_sign_patterns(instance, reduce_symmetry):
        s_eps, sols = solve_l0_branch(instance.phi, signed_rhs(instance, eps))
        if reduce_symmetry:
            for full, sign in expand_pattern(instance, eps):
                branch_results[full] = (s_eps, sols if sign == 1 else canonical(tuple(-v for v in x) for x in sols))
        else:
            branch_results[eps] = (s_eps, sols)

    s = min(k for k, _ in branch_results.values())
    union = []
    per_branch = {}
    for eps in sorted(branch_results):
        k, sols = branch_results[eps]
        # branches whose own sparsity exceeds s contribute nothing
        per_branch[eps] = sols if k == s else []
        union.extend(per_branch[eps])
    return SparseSolutionSet(sparsity=s, solutions=canonical(union), per_branch=per_branch)


def assert_uniform_sparsity(sol_set: SparseSolutionSet) -> bool:
    return all(len(support(x)) == sol_set.sparsity for x in sol_set.solutions)
