class InfeasibleError(ValueError):
    """A requested construction cannot be realised with the given parameters.

    ``hints`` optionally carries realizable alternatives (e.g. nearby
    dimensions) so callers can present them.
    """

    def __init__(self, message: str, hints=None):
        super().__init__(message)
        self.hints = list(hints) if hints is not None else []


class EnumerationLimitError(ValueError):
    """Exhaustive codeword enumeration would exceed the configured cap."""
