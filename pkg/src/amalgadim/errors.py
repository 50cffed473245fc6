"""Exception hierarchy shared by every module of the package."""


class AmalgadimError(Exception):
    """Base class for all errors raised by amalgadim."""


class GraphError(AmalgadimError):
    pass


class DuplicateVertex(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class BadParameter(AmalgadimError):
    pass


class Disconnected(AmalgadimError):
    pass


class SizeLimitExceeded(AmalgadimError):
    pass


class ParseError(AmalgadimError):
    """Malformed .gr/.amg input; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, message: str, line: int = 0, path: str | None = None):
        self.line = line
        self.path = path
        where = f"{path}:" if path else ""
        if line:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")


class InvalidEmbedding(AmalgadimError):
    pass


class DisconnectedPart(AmalgadimError):
    pass


class BudgetExceeded(AmalgadimError):
    """The exact search ran past its node cap or wall-clock timeout."""

    def __init__(self, message: str, nodes: int = 0, lower_bound: int | None = None):
        self.nodes = nodes
        self.lower_bound = lower_bound
        super().__init__(message)


class Infeasible(AmalgadimError):
    """A hitting-set instance has a constraint no admissible vertex can hit."""


class NotIsometric(AmalgadimError):
    pass


class InfeasibleClassification(AmalgadimError):
    pass


class NotBipartiteAfterDeletion(AmalgadimError):
    pass
