"""Exception types shared across the package."""


class OfnSyntaxError(ValueError):
    """Malformed `.ofn` input. Carries 1-based line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsupportedConstructError(OfnSyntaxError):
    """Syntactically OWL, but outside the supported axiom/expression subset."""

    def __init__(self, construct: str, line: int, column: int):
        super().__init__(f"unsupported construct: {construct}", line, column)
        self.construct = construct


class InvariantError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""
