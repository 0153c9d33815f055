class TruncationError(ArithmeticError):
    """A certified truncation bound could not be met within the working budget."""


class ResourceExhausted(RuntimeError):
    """A search or evaluation exceeded its configured budget."""
