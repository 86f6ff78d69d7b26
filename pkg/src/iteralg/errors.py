"""Exception hierarchy shared by all iteralg modules."""


class IterAlgError(Exception):
    """Base class for all package errors."""


class MorphismParseError(IterAlgError):
    """A morphism file violates the grammar or its declarations are inconsistent."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class NotProlongableError(IterAlgError):
    """The designated start letter cannot seed an infinite fixed point."""


class ContractError(IterAlgError):
    """A caller violated a documented precondition."""


class ResourceBudgetError(IterAlgError):
    """A computation would exceed its configured memory budget."""


class InvariantError(IterAlgError):
    """An internal self-check failed; results cannot be trusted."""


class RecurrenceValidationError(IterAlgError):
    """Initial terms do not satisfy the recurrence read off a characteristic polynomial."""

    def __init__(self, index: int, expected: int, actual: int):
        self.index = index
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"term {index} violates the recurrence: expected {expected}, got {actual}"
        )


class NoSplitError(IterAlgError):
    """No bracket split exists for a word; every rotation of it is a factor."""

    def __init__(self, word: str):
        self.word = word
        super().__init__(f"no valid split for word of length {len(word)}")
