class HypersetError(Exception):
    """Base class for domain errors raised by this package."""


class GraphTooLarge(HypersetError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"graph has {size} nodes, exceeding the limit of {limit}")
        self.size = size
        self.limit = limit


class DecodeError(HypersetError, ValueError):
    """A set is not a valid encoding of the requested kind."""


class NotAnOrdinal(DecodeError):
    pass


class NotAPair(DecodeError):
    pass


class ParseError(HypersetError):
    def __init__(self, message: str, line: int, column: int, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.source = source
