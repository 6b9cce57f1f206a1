"""Memoized analysis pipeline: each stage runs at most once per instance."""
from __future__ import annotations

import time
from collections import Counter
from fractions import Fraction
from functools import cached_property

from . import bounds as bounds_mod
from . import pstar as cert_mod
from . import exact_linalg as la
from . import l0 as l0_mod
from . import lp as lp_mod
from . import polytope as poly_mod
from .errors import InvariantViolation
from .instance import Instance, require_valid


class Pipeline:
    def __init__(self, instance: Instance, budget: int | None = None):
        self.instance = instance
        self.budget = budget
        self.timings: dict[str, float] = {}
        self.stage_runs: Counter = Counter()
        self._lp_exact: dict[float, lp_mod.LpSolveResult] = {}

    def _timed(self, name, fn, *args, **kwargs):
        self.stage_runs[name] += 1
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - t0

    @cached_property
    def validation(self):
        return self._timed("validate", require_valid, self.instance)

    @cached_property
    def l0_set(self) -> l0_mod.SparseSolutionSet:
        self.validation
        return self._timed("l0", l0_mod.solve_l0_phaseless, self.instance)

    @cached_property
    def bounds(self) -> bounds_mod.BoundReport:
        return self._timed("bounds", bounds_mod.r0, self.instance, self.l0_set.sparsity)

    @property
    def box_radius(self) -> Fraction:
        # any positive radius works when b = 0: the lifted optimum is the origin
        return self.bounds.r0 if self.bounds.r0 > 0 else Fraction(1)

    @cached_property
    def vset(self) -> poly_mod.VertexSet:
        return self._timed("vertices", poly_mod.pseudo_extreme_points, self.instance, self.box_radius,
                           self.budget)

    @cached_property
    def certificate(self) -> cert_mod.EquivalenceCertificate:
        vset = None if self.instance.is_zero else self.vset
        cert = self._timed("certificate", cert_mod.assemble, self.instance, self.l0_set, self.bounds, vset)
        self.check_invariants(cert)
        return cert

    def lp_exact(self, p: float) -> lp_mod.LpSolveResult:
        if p not in self._lp_exact:
            self._lp_exact[p] = self._timed(f"lp_exact[{p!r}]", lp_mod.solve_lp_exact, self.instance, p,
                                            self.vset)
        return self._lp_exact[p]

    def lp_heuristic(self, p: float, restarts: int = 32, seed: int = 0, **irls) -> lp_mod.LpSolveResult:
        self.validation
        return self._timed(f"lp_heuristic[{p!r}]", lp_mod.solve_lp_heuristic, self.instance, p,
                           restarts, seed, **irls)

    def verify(self, p: float) -> lp_mod.VerificationReport:
        cert = self.certificate
        if p >= cert.pstar:
            raise lp_mod.PNotBelowPstar(p, cert.pstar)
        return lp_mod.verify_equivalence(self.instance, p, cert, l0_set=self.l0_set,
                                         lp_result=self.lp_exact(p))

    def check_invariants(self, cert) -> None:
        if not cert.uniform_sparsity:
            raise InvariantViolation("an l0 solution has a support size different from s")
        for x in self.l0_set.solutions:
            if la.inf_norm(x) > cert.c0:
                raise InvariantViolation(f"l0 solution outside the c0 box: {x}")
        if cert.rm is not None and not 0 < cert.rm <= cert.r0:
            raise InvariantViolation(f"rm={cert.rm} outside (0, r0={cert.r0}]")
        if not 0 < cert.pstar <= 1:
            raise InvariantViolation(f"p*={cert.pstar} outside (0, 1]")
