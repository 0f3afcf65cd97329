"""Exception types shared across the package."""


class UsageError(ValueError):
    """An operation was called outside its contract (bad mode, unmet precondition)."""


class InstanceFormatError(ValueError):
    """A document or in-memory instance violates the schema or an invariant."""


class DecompositionError(ValueError):
    """A supplied tree decomposition is not valid for the graph."""


class NotACographError(UsageError):
    """A cograph-only operation was invoked on a graph with an induced P4."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"not a cograph: induced P4 on vertices {self.witness}")


class OracleLimitError(RuntimeError):
    """The exhaustive oracle would exceed its configured enumeration cap."""
