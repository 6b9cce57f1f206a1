"""PCS instances ``|Phi x| = b``, their validation, sign patterns and file format."""
from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterator

from . import exact_linalg as la
from .errors import DimensionMismatch, ParseError, ValidationError

SignPattern = tuple  # tuple[int, ...] with entries -1 / +1


@dataclass(frozen=True)
class Instance:
    phi: la.Matrix
    b: la.Vector

    @classmethod
    def from_values(cls, phi, b) -> "Instance":
        return cls(la.matrix(phi), la.vector(b))

    @property
    def m(self) -> int:
        return len(self.phi)

    @property
    def n(self) -> int:
        return len(self.phi[0]) if self.phi else 0

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.b)


@dataclass
class ValidationReport:
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def validate(instance: Instance) -> ValidationReport:
    report = ValidationReport()
    m, n = instance.m, instance.n

    shape_ok = m >= 1 and n >= 1 and all(len(r) == n for r in instance.phi) and len(instance.b) == m
    report.checks["shape"] = shape_ok
    if not shape_ok:
        report.failures.append(f"phi must be m x n with m, n >= 1 and b of length m (got b of length {len(instance.b)})")
        return report

    nonneg = all(v >= 0 for v in instance.b)
    report.checks["b_nonnegative"] = nonneg
    if not nonneg:
        bad = [j for j, v in enumerate(instance.b) if v < 0]
        report.failures.append(f"b has negative entries at indices {bad}")

    r = la.rank(instance.phi)
    report.checks["full_row_rank"] = r == m
    if r != m:
        report.failures.append(f"phi has rank {r} < m={m}")

    report.checks["m_le_n"] = m <= n
    if m > n:
        report.failures.append(f"m={m} exceeds n={n}")
    elif m == n:
        report.warnings.append(f"m = n = {m}: outside the m << n regime")
    return report


def require_valid(instance: Instance) -> ValidationReport:
    report = validate(instance)
    if not report.ok:
        raise ValidationError(report)
    for w in report.warnings:
        warnings.warn(w, stacklevel=2)
    return report


def signed_rhs(instance: Instance, eps: SignPattern) -> la.Vector:
    if len(eps) != instance.m:
        raise DimensionMismatch(f"sign pattern has length {len(eps)}, expected {instance.m}")
    return tuple(v * e for v, e in zip(instance.b, eps))


def negate(eps: SignPattern) -> SignPattern:
    return tuple(-e for e in eps)


def enumerate_sign_patterns(instance: Instance, reduce_symmetry: bool = True) -> list[SignPattern]:
    """Sign patterns in lexicographic order (-1 before +1).

    With ``reduce_symmetry`` every index where ``b_j = 0`` is pinned to +1 and,
    of each antipodal pair, only the member whose first free entry is +1 is kept.
    """
    m = instance.m
    if not reduce_symmetry:
        return list(itertools.product((-1, 1), repeat=m))
    free = [j for j, v in enumerate(instance.b) if v != 0]
    out = []
    for eps in itertools.product((-1, 1), repeat=m):
        if any(eps[j] != 1 for j in range(m) if instance.b[j] == 0):
            continue
        if free and eps[free[0]] != 1:
            continue
        out.append(eps)
    return out


def expand_pattern(instance: Instance, eps: SignPattern) -> Iterator[tuple[SignPattern, int]]:
    """All full patterns represented by a reduced ``eps``, each with its sign.

    Sign +1 means the branch solution set equals that of ``eps``; -1 means it
    is the negation of it.
    """
    zero = [j for j, v in enumerate(instance.b) if v == 0]
    seen = set()
    for flip_global, sign in (((1,) * instance.m, 1), ((-1,) * instance.m, -1)):
        base = tuple(e * f for e, f in zip(eps, flip_global))
        for zs in itertools.product((-1, 1), repeat=len(zero)):
            full = list(base)
            for j, z in zip(zero, zs):
                full[j] = z
            full = tuple(full)
            if full not in seen:
                seen.add(full)
                yield full, sign


# --- file format ----------------------------------------------------------


def parse_number(raw, field_name: str) -> Fraction:
    if isinstance(raw, bool):
        raise ParseError(f"expected a number, got {raw!r}", field=field_name)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, Decimal):
        return Fraction(raw)
    if isinstance(raw, str):
        text = raw.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                num_i, den_i = int(num), int(den)
                if den_i == 0:
                    raise ParseError(f"zero denominator in {raw!r}", field=field_name)
                return Fraction(num_i, den_i)
            return Fraction(Decimal(text))
        except (ValueError, InvalidOperation, OverflowError):
            raise ParseError(f"cannot parse number {raw!r}", field=field_name) from None
    raise ParseError(f"expected a number, got {type(raw).__name__}", field=field_name)


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("m", "n", "phi", "b"):
        if key not in doc:
            raise ParseError("missing required field", field=key)
    m, n = doc["m"], doc["n"]
    for key, val in (("m", m), ("n", n)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise ParseError(f"must be a positive integer, got {val!r}", field=key)
    phi_raw, b_raw = doc["phi"], doc["b"]
    if not isinstance(phi_raw, list) or len(phi_raw) != m:
        raise ParseError(f"must be a list of {m} rows", field="phi")
    rows = []
    for i, row in enumerate(phi_raw):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must have {n} entries", field="phi")
        rows.append(tuple(parse_number(v, f"phi[{i}][{j}]") for j, v in enumerate(row)))
    if not isinstance(b_raw, list) or len(b_raw) != m:
        raise ParseError(f"must be a list of {m} entries", field="b")
    b = tuple(parse_number(v, f"b[{j}]") for j, v in enumerate(b_raw))
    return Instance(tuple(rows), b)


def instance_to_dict(instance: Instance) -> dict:
    return {
        "m": instance.m,
        "n": instance.n,
        "phi": [[la.fmt(v) for v in row] for row in instance.phi],
        "b": [la.fmt(v) for v in instance.b],
    }


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return instance_from_dict(doc)


def dumps_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())
