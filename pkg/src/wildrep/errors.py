"""Exception hierarchy.  ``exit_code`` is what the command line returns."""


class WildrepError(Exception):
    exit_code = 4


class ParseError(WildrepError):
    exit_code = 2

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.line, self.col = line, col


class SemanticError(WildrepError):
    exit_code = 3


class NotRepresentable(WildrepError):
    pass


class DifferentPoints(WildrepError):
    pass


class TargetTooSmall(SemanticError):
    pass


class Incompatible(SemanticError):
    exit_code = 4


class SymbolicScale(WildrepError):
    pass


class Unrealizable(WildrepError):
    pass


class ExcludedRankOne(WildrepError):
    pass


class NotSl2(WildrepError):
    pass
