"""Exception hierarchy shared by the library and the command line."""


class DtdError(Exception):
    """Base class for every error raised by this package."""


class InputError(DtdError, ValueError):
    """Malformed or out-of-range input."""

    line = None


class CycleDetected(InputError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"edge set contains a directed cycle: {self.cycle}")


class DuplicateEdge(InputError):
    def __init__(self, u, v):
        self.edge = (u, v)
        super().__init__(f"duplicate edge ({u}, {v})")


class SelfLoop(InputError):
    def __init__(self, v):
        self.vertex = v
        super().__init__(f"self-loop at vertex {v}")


class InvalidThresholds(InputError):
    pass


class MissingVertex(InputError, KeyError):
    pass


class NotSimple(InputError):
    pass


class WrongStepKind(InputError):
    def __init__(self, position, message):
        self.position = position
        super().__init__(f"step {position}: {message}")


class DegenerateInput(InputError):
    """The dag models a weak order, so it has no meaningful cycle structure."""


class InvalidFactor(InputError):
    pass


class NonpositiveWeight(InputError):
    pass


class TooLarge(InputError):
    pass


class BadParams(InputError):
    pass


class ParseError(InputError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
