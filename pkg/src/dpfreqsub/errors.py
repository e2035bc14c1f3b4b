"""Exception hierarchy shared by all modules."""


class DPFreqSubError(Exception):
    """Base class for library errors."""


class InvalidAlphabetError(DPFreqSubError, ValueError):
    pass


class EncodingError(DPFreqSubError, ValueError):
    """A document symbol is not covered by the codebook."""

    def __init__(self, symbol, position):
        super().__init__(f"symbol {symbol!r} at position {position} is not in the alphabet")
        self.symbol = symbol
        self.position = position


class UndecodableError(DPFreqSubError, ValueError):
    pass


class AlignmentError(DPFreqSubError, ValueError):
    pass


class ParameterError(DPFreqSubError, ValueError):
    pass


class ConfigurationError(ParameterError):
    pass


class StreamExhaustedError(DPFreqSubError, RuntimeError):
    pass


class EmptyStreamError(DPFreqSubError, RuntimeError):
    pass
