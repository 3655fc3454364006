"""Engine error type carrying a stable machine-readable code."""


class EngineError(Exception):
    """Raised for domain rule violations.

    Args:
        code: stable identifier, e.g. "TARGET_EXCEEDS_POOL". Callers and the
            HTTP layer dispatch on this, never on the message text.
        message: human-readable explanation.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code

    def __repr__(self) -> str:
        return f"EngineError({self.code!r}, {self.args[0]!r})"
