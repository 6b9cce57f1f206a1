"""Lifted polytopes T_eps, their exact vertices, and the smallest positive lifted coordinate.

A point of T_eps is a pair (x, y) in R^n x R^n with

    Phi x = b_eps,   x_i - y_i <= 0,   -x_i - y_i <= 0,   y_i <= r0.

The bounds -r0 <= x_i <= r0 and y_i >= 0 follow from those three families
and are kept only as metadata.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import exact_linalg as la
from .errors import AllYZero, BudgetExceeded, InvalidInputs, NoUniqueSolution
from .instance import Instance, SignPattern, enumerate_sign_patterns, expand_pattern, signed_rhs

DEFAULT_BUDGET = 10**7

# row families per coordinate, in canonical order
UPPER, LOWER, CAP = 0, 1, 2  # x_i - y_i <= 0, -x_i - y_i <= 0, y_i <= r0
FAMILY_NAMES = ("x-y<=0", "-x-y<=0", "y<=r0")

# activity states of one coordinate; {UPPER, LOWER, CAP} together would force
# 0 = y_i = r0 and is impossible
STATES = ((), (UPPER,), (LOWER,), (CAP,), (UPPER, LOWER), (UPPER, CAP), (LOWER, CAP))


def get_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("PCS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Inequality:
    coeffs: tuple  # over (x, y), length 2n
    rhs: Fraction
    family: str
    index: int
    redundant: bool = False


@dataclass
class LiftedPolytope:
    eps: SignPattern
    n: int
    m: int
    phi: la.Matrix
    b_eps: la.Vector
    r0: Fraction
    inequalities: list = field(default_factory=list)
    redundant: list = field(default_factory=list)

    @property
    def equalities(self) -> la.Matrix:
        zero = (Fraction(0),) * self.n
        return tuple(tuple(row) + zero for row in self.phi)

    def contains(self, x, y) -> bool:
        if la.matvec(self.phi, x) != tuple(self.b_eps):
            return False
        return all(abs(xi) <= yi <= self.r0 for xi, yi in zip(x, y))

    def active_rank(self, x, y) -> int:
        """Rank of the equalities plus all canonical inequalities tight at (x, y)."""
        point = tuple(x) + tuple(y)
        rows = list(self.equalities)
        for ineq in self.inequalities:
            if sum((c * v for c, v in zip(ineq.coeffs, point)), Fraction(0)) == ineq.rhs:
                rows.append(ineq.coeffs)
        return la.rank(tuple(rows))


def _row(n: int, x_coef: dict, y_coef: dict) -> tuple:
    r = [Fraction(0)] * (2 * n)
    for i, c in x_coef.items():
        r[i] = Fraction(c)
    for i, c in y_coef.items():
        r[n + i] = Fraction(c)
    return tuple(r)


def build_lifted(instance: Instance, eps: SignPattern, r0: Fraction) -> LiftedPolytope:
    r0 = Fraction(r0)
    if r0 <= 0:
        raise InvalidInputs(f"r0 must be positive, got {r0}")
    n = instance.n
    poly = LiftedPolytope(eps=tuple(eps), n=n, m=instance.m, phi=instance.phi,
                          b_eps=signed_rhs(instance, eps), r0=r0)
    zero = Fraction(0)
    for i in range(n):
        poly.inequalities += [
            Inequality(_row(n, {i: 1}, {i: -1}), zero, FAMILY_NAMES[UPPER], i),
            Inequality(_row(n, {i: -1}, {i: -1}), zero, FAMILY_NAMES[LOWER], i),
            Inequality(_row(n, {}, {i: 1}), r0, FAMILY_NAMES[CAP], i),
        ]
        poly.redundant += [
            Inequality(_row(n, {i: 1}, {}), r0, "x<=r0", i, redundant=True),
            Inequality(_row(n, {i: -1}, {}), r0, "-x<=r0", i, redundant=True),
            Inequality(_row(n, {}, {i: -1}), zero, "-y<=0", i, redundant=True),
        ]
    return poly


def structured_candidate_count(n: int, m: int) -> int:
    # m free coordinates with one active row each, the rest with two
    return comb(n, m) * 3**n


def enumerate_vertices(poly: LiftedPolytope, budget: int | None = None) -> list[tuple]:
    """Exact vertex list of ``poly`` as sorted ``(x, y)`` pairs.

    Works per coordinate: each coordinate takes one of the activity states in
    :data:`STATES` and a vertex needs ``2n - m`` active inequalities. A
    coordinate with no active row leaves y_i free, so every coordinate has one
    or two active rows, which means exactly ``m`` coordinates keep x_i free.
    The two-row states pin (x_i, y_i) to (0, 0), (r0, r0) or (-r0, r0); the
    free x-block then solves a square m x m system, and each free coordinate
    picks y_i = x_i, y_i = -x_i or y_i = r0.
    """
    n, m, r0 = poly.n, poly.m, poly.r0
    limit = get_budget(budget)
    need = structured_candidate_count(n, m)
    if need > limit:
        raise BudgetExceeded(f"{need} candidate systems exceed the budget of {limit}")

    pinned_states = [s for s in STATES if len(s) == 2]
    pinned_value = {
        (UPPER, LOWER): (Fraction(0), Fraction(0)),
        (UPPER, CAP): (r0, r0),
        (LOWER, CAP): (-r0, r0),
    }
    single_states = [s for s in STATES if len(s) == 1]

    found = set()
    for free in itertools.combinations(range(n), m):
        sub = la.columns(poly.phi, free)
        if la.rank(sub) < m:
            continue
        rest = [j for j in range(n) if j not in free]
        for states in itertools.product(pinned_states, repeat=len(rest)):
            x = [Fraction(0)] * n
            y = [Fraction(0)] * n
            for j, st in zip(rest, states):
                x[j], y[j] = pinned_value[st]
            rhs = tuple(
                bv - sum((poly.phi[r][j] * x[j] for j in rest), Fraction(0))
                for r, bv in enumerate(poly.b_eps)
            )
            try:
                xf = la.solve_unique(sub, rhs)
            except NoUniqueSolution:
                continue
            if any(abs(v) > r0 for v in xf):
                continue
            for j, v in zip(free, xf):
                x[j] = v
            for modes in itertools.product(single_states, repeat=m):
                yy = list(y)
                ok = True
                for j, (mode,) in zip(free, modes):
                    if mode == UPPER:
                        yy[j] = x[j]
                    elif mode == LOWER:
                        yy[j] = -x[j]
                    else:
                        yy[j] = r0
                    if not abs(x[j]) <= yy[j] <= r0:
                        ok = False
                        break
                if ok:
                    found.add((tuple(x), tuple(yy)))
    return sorted(found)


def enumerate_vertices_naive(poly: LiftedPolytope, budget: int | None = None) -> list[tuple]:
    """Reference enumerator: every choice of ``2n - m`` canonical rows made tight."""
    n, m = poly.n, poly.m
    k = 2 * n - m
    limit = get_budget(budget)
    need = comb(3 * n, k)
    if need > limit:
        raise BudgetExceeded(f"{need} candidate systems exceed the budget of {limit}")
    eq = list(poly.equalities)
    found = set()
    for rows in itertools.combinations(poly.inequalities, k):
        A = tuple(eq + [r.coeffs for r in rows])
        rhs = tuple(poly.b_eps) + tuple(r.rhs for r in rows)
        try:
            z = la.solve_unique(A, rhs)
        except NoUniqueSolution:
            continue
        x, y = z[:n], z[n:]
        if poly.contains(x, y):
            found.add((x, y))
    return sorted(found)


@dataclass
class VertexSet:
    points: list = field(default_factory=list)
    source: dict = field(default_factory=dict)


def pseudo_extreme_points(instance: Instance, r0: Fraction, budget: int | None = None,
                          reduce_symmetry: bool = True) -> VertexSet:
    r0 = Fraction(r0)
    source: dict = {}
    for eps in enumerate_sign_patterns(instance, reduce_symmetry):
        verts = enumerate_vertices(build_lifted(instance, eps, r0), budget)
        targets = expand_pattern(instance, eps) if reduce_symmetry else [(eps, 1)]
        for full, sign in targets:
            for x, y in verts:
                pt = (x, y) if sign == 1 else (tuple(-v for v in x), y)
                source.setdefault(pt, set()).add(full)
    points = sorted(source)
    return VertexSet(points=points, source={p: source[p] for p in points})


def compute_rm(vset: VertexSet) -> Fraction:
    positive = [v for _, y in vset.points for v in y if v != 0]
    if not positive:
        raise AllYZero("every pseudo-extreme point has y = 0")
    return min(positive)
