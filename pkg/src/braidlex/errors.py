"""Exception types shared across the package."""


class BraidLexError(Exception):
    """Base class for all braidlex errors."""


class BraidWordError(BraidLexError):
    """A word contains a letter outside the generator range 1..n."""


class ConfigError(BraidLexError):
    """A segment configuration violates the nesting constraints."""


class DiagramParseError(BraidLexError):
    """A diagram is malformed (e.g. zero or two squares)."""


class ForbiddenLetterError(BraidLexError):
    """A transition was requested on a letter carrying a black circle."""


class ShiftRangeError(BraidLexError):
    """A shift would push an index past the ambient generator count."""


class BuildLimitError(BraidLexError):
    """Requested automaton exceeds the configured state-count guard."""


class InternalConsistencyError(BraidLexError):
    """Two routes that must agree produced different answers."""


class ConvergenceError(BraidLexError):
    """Power iteration failed to converge within the iteration budget."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SpectralPreconditionError(BraidLexError):
    """A spectral routine was called outside its guaranteed regime."""


class BoundViolationError(BraidLexError):
    """A proved growth/proportion bound failed numerically."""

    def __init__(self, bound, n, value):
        super().__init__(f"bound {bound} violated at n={n}: {value!r}")
        self.bound = bound
        self.n = n
        self.value = value
