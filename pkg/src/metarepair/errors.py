"""Exception hierarchy shared across the package."""

from __future__ import annotations


class MetarepairError(Exception):
    """Base class for all errors raised by this package."""


class JavaSyntaxError(MetarepairError):
    """Source text does not parse as Java."""

    def __init__(self, message: str, line: int, column: int, path: str | None = None):
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class EncodingError(MetarepairError):
    """Source bytes are not valid UTF-8."""


class OverlappingEdits(MetarepairError):
    """Two edits in one script touch the same bytes."""


class FunctionNotFound(MetarepairError):
    pass


class AmbiguousFunction(MetarepairError):
    pass


class ProviderExhausted(MetarepairError):
    pass


class StageParseFailure(MetarepairError):
    """A transformation stage produced text that no longer parses."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage} produced unparseable text: {cause}")


class SchemaError(MetarepairError):
    def __init__(self, message: str, bug_id: str | None = None, field: str | None = None):
        self.bug_id = bug_id
        self.field = field
        prefix = ""
        if bug_id is not None:
            prefix += f"bug {bug_id}: "
        if field is not None:
            prefix += f"field '{field}': "
        super().__init__(prefix + message)


class CommandFailure(MetarepairError):
    """An external command could not be run at all (infrastructure problem)."""


class CommandTimeout(MetarepairError):
    pass


class ToolchainUnavailable(MetarepairError):
    pass


class NoExampleAvailable(MetarepairError):
    pass


class MissingIngredient(MetarepairError):
    pass


class BudgetExceeded(MetarepairError):
    pass


class PreconditionViolation(MetarepairError):
    pass


class EndpointUnavailable(MetarepairError):
    pass


class ZeroBaseline(MetarepairError):
    pass
