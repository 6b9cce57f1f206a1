"""JSON report documents. Rationals are written as 'p/q' strings, reals as shortest round-trip floats."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import exact_linalg as la
from .bounds import BoundReport
from .pstar import EquivalenceCertificate
from .instance import instance_to_dict

SCHEMA_VERSION = "1.0"


def pattern_key(eps) -> str:
    return ",".join("+1" if e > 0 else "-1" for e in eps)


def parse_pattern_key(key: str) -> tuple:
    return tuple(int(tok) for tok in key.split(","))


def _num(v):
    return la.fmt(v) if isinstance(v, Fraction) else float(v) + 0.0


def vec(x) -> list:
    return [_num(v) for v in x]


def _frac(s):
    return None if s is None else Fraction(s)


def bounds_to_dict(report: BoundReport) -> dict:
    return {
        "s_used": report.s_used,
        "c0_eps": {pattern_key(k): la.fmt(v) for k, v in report.c0_eps.items()},
        "cp_eps": {pattern_key(k): la.fmt(v) for k, v in report.cp_eps.items()},
        "c0": la.fmt(report.c0),
        "c1": la.fmt(report.c1),
        "r0": la.fmt(report.r0),
        "degenerate": report.degenerate,
    }


def bounds_from_dict(doc: dict) -> BoundReport:
    return BoundReport(
        c0_eps={parse_pattern_key(k): Fraction(v) for k, v in doc["c0_eps"].items()},
        c0=Fraction(doc["c0"]),
        cp_eps={parse_pattern_key(k): Fraction(v) for k, v in doc["cp_eps"].items()},
        c1=Fraction(doc["c1"]),
        r0=Fraction(doc["r0"]),
        s_used=doc["s_used"],
        degenerate=doc["degenerate"],
    )


def certificate_to_dict(cert: EquivalenceCertificate) -> dict:
    return {
        "s": cert.s,
        "c0": la.fmt(cert.c0),
        "c1": la.fmt(cert.c1),
        "r0": la.fmt(cert.r0),
        "rm": None if cert.rm is None else la.fmt(cert.rm),
        "ratio": None if cert.ratio is None else la.fmt(cert.ratio),
        "pstar": cert.pstar,
        "pstar_is_capped": cert.pstar_is_capped,
        "degenerate": cert.degenerate,
        "uniform_sparsity": cert.uniform_sparsity,
        "vertex_count": cert.vertex_count,
        "notes": list(cert.notes),
        "bounds": bounds_to_dict(cert.bounds),
    }


def certificate_from_dict(doc: dict) -> EquivalenceCertificate:
    return EquivalenceCertificate(
        s=doc["s"], c0=Fraction(doc["c0"]), c1=Fraction(doc["c1"]), r0=Fraction(doc["r0"]),
        rm=_frac(doc["rm"]), ratio=_frac(doc["ratio"]), pstar=doc["pstar"],
        pstar_is_capped=doc["pstar_is_capped"], degenerate=doc["degenerate"],
        uniform_sparsity=doc["uniform_sparsity"], bounds=bounds_from_dict(doc["bounds"]),
        vertex_count=doc["vertex_count"], notes=list(doc["notes"]),
    )


def l0_to_dict(sol_set) -> dict:
    return {
        "sparsity": sol_set.sparsity,
        "solutions": [vec(x) for x in sol_set.solutions],
        "per_branch": {pattern_key(k): [vec(x) for x in v] for k, v in sol_set.per_branch.items()},
    }


def lifted_to_list(points) -> list:
    return [{"x": vec(x), "y": vec(y)} for x, y in points]


def lp_to_dict(res) -> dict:
    return {
        "p": res.p,
        "method": res.method,
        "optimal_value": res.optimal_value,
        "solutions": [vec(x) for x in res.solutions],
        "lifted_solutions": lifted_to_list(res.lifted_solutions),
        "slack_optima": lifted_to_list(res.slack_optima),
    }


def verification_to_dict(rep) -> dict:
    return {
        "p": rep.p,
        "status": "PASS" if rep.passed else "FAIL",
        "lp_count": rep.lp_count,
        "l0_count": rep.l0_count,
        "strict": rep.strict,
        "missing": [vec(x) for x in rep.missing],
    }


def vertex_set_to_list(vset) -> list:
    return [
        {"x": vec(x), "y": vec(y), "source": sorted(pattern_key(e) for e in vset.source[(x, y)])}
        for x, y in vset.points
    ]


@dataclass
class ReportDocument:
    command: str
    instance_echo: dict
    schema_version: str = SCHEMA_VERSION
    certificate: dict | None = None
    l0_solutions: dict | None = None
    lp_results: list = field(default_factory=list)
    verification: list = field(default_factory=list)
    pseudo_extreme_points: list | None = None
    timings: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @classmethod
    def for_instance(cls, command: str, instance) -> "ReportDocument":
        return cls(command=command, instance_echo=instance_to_dict(instance))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "ReportDocument":
        return cls(**doc)


def dumps_report(doc: ReportDocument) -> str:
    return json.dumps(doc.to_dict(), indent=2) + "\n"


def loads_report(text: str) -> ReportDocument:
    return ReportDocument.from_dict(json.loads(text))


def strip_timings(text: str) -> dict:
    doc = json.loads(text)
    doc.pop("timings", None)
    return doc
