"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI maps it to.
"""


class PCSError(Exception):
    exit_code = 4


class InputError(PCSError):
    """Malformed instance file or invalid argument."""

    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, field=None, line=None, column=None):
        where = []
        if field is not None:
            where.append(f"field '{field}'")
        if line is not None:
            where.append(f"line {line}, column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line
        self.column = column


class ValidationError(InputError):
    def __init__(self, report):
        super().__init__("instance failed validation: " + "; ".join(report.failures))
        self.report = report


class PNotInRange(InputError):
    pass


class BudgetExceeded(PCSError):
    exit_code = 3


class InvariantViolation(PCSError):
    exit_code = 4


class DimensionMismatch(PCSError, ValueError):
    pass


class NoUniqueSolution(PCSError):
    """Raised by :func:`solve_unique`; ``reason`` is 'inconsistent' or 'underdetermined'."""

    def __init__(self, reason):
        super().__init__(f"no unique solution ({reason})")
        self.reason = reason


class NotFullColumnRank(PCSError, ValueError):
    pass


class NotFullRowRank(PCSError, ValueError):
    pass


class NoFullColumnRankSupport(PCSError):
    pass


class AllYZero(PCSError):
    pass


class EmptyVertexSet(PCSError):
    pass


class InvalidInputs(PCSError, ValueError):
    pass


class PNotBelowPstar(PCSError):
    exit_code = 1

    def __init__(self, p, pstar):
        super().__init__(f"p={p!r} is not below p*={pstar!r}; no equivalence guarantee there")
        self.p = p
        self.pstar = pstar
