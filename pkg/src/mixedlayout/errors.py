"""Exception hierarchy shared by all modules."""


class MixedLayoutError(Exception):
    """Base class for every error raised by this package."""


class GraphError(MixedLayoutError, ValueError):
    """Malformed graph input (self-loop, out-of-range endpoint, duplicate edge)."""


class UnknownEdgeError(GraphError, KeyError):
    """An operation referenced an edge that is not in the graph."""

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class SizeCapExceeded(MixedLayoutError):
    """A build or scan would exceed a configured size cap."""

    def __init__(self, message: str, *, vertices: int | None = None, edges: int | None = None):
        super().__init__(message)
        self.vertices = vertices
        self.edges = edges


class SizeOverflowError(MixedLayoutError, OverflowError):
    """A closed-form size does not fit the requested integer width."""


class LayoutStructureError(MixedLayoutError, ValueError):
    """A layout does not cover the graph or uses page ids outside its page spec.

    Distinct from a layout that is well formed but violates the stack/queue rules.
    """


class AdjacentEdgesError(MixedLayoutError, ValueError):
    """Crossing and nesting are only defined for independent edges."""


class FormatError(MixedLayoutError, ValueError):
    """A text file (.lg, .ll, DIMACS) could not be parsed."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class NotGklError(MixedLayoutError, ValueError):
    """An audit needs a G(k, l) build but received some other 2-tree."""


class ScaffoldError(MixedLayoutError, ValueError):
    """A scaffold is inconsistent before any free vertex is placed."""


class EncodingConsistencyError(MixedLayoutError):
    """A SAT model does not decode to a valid layout."""
