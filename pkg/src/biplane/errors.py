"""Error taxonomy shared across the library and the CLI.

Exit codes: impossibility rejections map to 2, precondition violations to 3,
internal invariant failures to 4 (see cli module).
"""


class BiplaneError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ImpossibleError(BiplaneError):
    """The requested object provably does not exist for this input."""

    exit_code = 2


class PreconditionError(BiplaneError):
    """The caller violated a documented precondition."""

    exit_code = 3


class InternalInvariantError(BiplaneError):
    """An internal invariant failed; indicates a bug, never expected."""

    exit_code = 4
