"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so the split between them matters:
``PreconditionError`` means the caller handed us an input outside an
operation's domain, ``ScaleError`` means the input is valid but too large
for an exhaustive mode.
"""


class GoodlabError(Exception):
    pass


class GraphError(GoodlabError, ValueError):
    """Malformed graph input (bad endpoint, self-loop, bad literal)."""


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class InfeasibleError(GoodlabError, ValueError):
    """Generator parameters that admit no graph, or a sampler that gave up."""


class PreconditionError(GoodlabError, ValueError):
    pass


class ScaleError(GoodlabError, RuntimeError):
    pass
