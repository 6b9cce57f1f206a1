"""Equivalence threshold p* and the certificate bundling it."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import bounds as bounds_mod
from . import l0 as l0_mod
from . import polytope as poly_mod
from .errors import InvalidInputs
from .instance import Instance, require_valid

_PREC_BITS = 256


def _log(q: Fraction):
    return mpmath.log(mpmath.mpf(q.numerator)) - mpmath.log(mpmath.mpf(q.denominator))


def compute_pstar(s: int, r0: Fraction, rm: Fraction) -> float:
    """Threshold below which every lp optimum is an l0 optimum.

    The branch test is exact. The logarithmic branch is evaluated at 256-bit
    precision and rounded toward zero, so the returned float never exceeds
    the true value.
    """
    r0, rm = Fraction(r0), Fraction(rm)
    if s < 1 or rm <= 0 or rm > r0:
        raise InvalidInputs(f"need s >= 1 and 0 < rm <= r0 (got s={s}, r0={r0}, rm={rm})")
    ratio = r0 / rm
    if ratio <= Fraction(s + 1, s):
        return 1.0
    with mpmath.workprec(_PREC_BITS):
        exact = (mpmath.log(s + 1) - mpmath.log(s)) / _log(ratio)
        value = float(exact)
        if mpmath.mpf(value) > exact:
            value = math.nextafter(value, 0.0)
    return value


@dataclass
class EquivalenceCertificate:
    s: int
    c0: Fraction
    c1: Fraction
    r0: Fraction
    rm: Fraction | None
    ratio: Fraction | None
    pstar: float
    pstar_is_capped: bool
    degenerate: bool
    uniform_sparsity: bool
    bounds: bounds_mod.BoundReport
    vertex_count: int
    notes: list = field(default_factory=list)


def assemble(instance: Instance, l0_set: l0_mod.SparseSolutionSet, report: bounds_mod.BoundReport,
             vset: poly_mod.VertexSet | None) -> EquivalenceCertificate:
    s = l0_set.sparsity
    uniform = l0_mod.assert_uniform_sparsity(l0_set)
    if instance.is_zero:
        return EquivalenceCertificate(
            s=0, c0=report.c0, c1=report.c1, r0=report.r0, rm=None, ratio=None,
            pstar=1.0, pstar_is_capped=True, degenerate=True, uniform_sparsity=uniform,
            bounds=report, vertex_count=0 if vset is None else len(vset.points),
            notes=["b = 0: x = 0 is the unique optimum of both problems for every p; "
                   "the threshold formula needs s >= 1 and is not applied"],
        )
    rm = poly_mod.compute_rm(vset)
    ratio = report.r0 / rm
    pstar = compute_pstar(s, report.r0, rm)
    return EquivalenceCertificate(
        s=s, c0=report.c0, c1=report.c1, r0=report.r0, rm=rm, ratio=ratio,
        pstar=pstar, pstar_is_capped=ratio <= Fraction(s + 1, s), degenerate=False,
        uniform_sparsity=uniform, bounds=report, vertex_count=len(vset.points),
    )


def certify(instance: Instance, budget: int | None = None) -> EquivalenceCertificate:
    require_valid(instance)
    l0_set = l0_mod.solve_l0_phaseless(instance)
    report = bounds_mod.r0(instance, l0_set.sparsity)
    vset = None if instance.is_zero else poly_mod.pseudo_extreme_points(instance, report.r0, budget)
    return assemble(instance, l0_set, report, vset)
