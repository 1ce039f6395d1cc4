"""Exception hierarchy for genplot."""


class GeneratorError(Exception):
    """Base class for all errors raised by this package."""


class EmbeddingFormatError(GeneratorError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class UnknownWordError(GeneratorError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class EmptyGroupError(GeneratorError):
    pass


class CapacityError(GeneratorError):
    pass


class SeparationError(GeneratorError):
    """Scatter points could not be placed with the requested pixel spacing."""


class MetadataParseError(GeneratorError):
    def __init__(self, message, pair_index=None):
        self.pair_index = pair_index
        if pair_index is not None:
            message = f"pair {pair_index}: {message}"
        super().__init__(message)


class NumberFormatError(GeneratorError, ValueError):
    pass


class GeometryError(GeneratorError):
    pass


class OverlapError(GeneratorError):
    pass


class SpecError(GeneratorError, ValueError):
    pass


class RasterizeError(GeneratorError):
    pass


class GenerationFailed(GeneratorError):
    def __init__(self, index, attempts, last_error):
        self.index = index
        self.attempts = attempts
        self.last_error = last_error
        super().__init__(f"index {index}: {attempts} attempts failed, last error: {last_error}")


class ConfigError(GeneratorError):
    pass
