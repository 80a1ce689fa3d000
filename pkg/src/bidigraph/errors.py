"""Exception hierarchy shared by the library and the CLI."""


class BidigraphError(Exception):
    """Base class for every error raised by bidigraph."""


class UnknownVertexError(BidigraphError, KeyError):
    def __init__(self, vertex):
        super().__init__(vertex)
        self.vertex = vertex

    def __str__(self):
        return f"unknown vertex {self.vertex!r}"


class UnknownEdgeError(BidigraphError, KeyError):
    def __init__(self, edge_id):
        super().__init__(edge_id)
        self.edge_id = edge_id

    def __str__(self):
        return f"unknown edge {self.edge_id!r}"


class GraphError(BidigraphError, ValueError):
    """Structurally invalid graph (bad sign, undeclared endpoint, duplicate id)."""


class MalformedChainError(BidigraphError, ValueError):
    """A walk whose consecutive elements are not incident in the graph."""


class NotPartialGraphError(BidigraphError, ValueError):
    """H was expected to be a partial graph of G but is not."""


class OrderingError(BidigraphError, ValueError):
    """An edge ordering that is not a permutation of the edge set."""


class NonUniqueReductionError(BidigraphError):
    """The graph has a b-circuit, so its transitive reduction depends on the ordering."""


class CapExceededError(BidigraphError):
    """An enumeration or guard limit was hit; the partial answer is not trustworthy."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class ParseError(BidigraphError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
