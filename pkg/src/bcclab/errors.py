"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """An enumeration or construction exceeds its configured size limit."""


class ProtocolViolation(RuntimeError):
    """A vertex state machine broke the per-round bandwidth contract."""


class PartitionParseError(ValueError):
    """Malformed partition text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InternalConsistencyError(RuntimeError):
    """Two internally derived views of the same object disagree."""
