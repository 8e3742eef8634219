"""Exception hierarchy shared by all persistlab modules."""


class PersistlabError(Exception):
    """Base class for every error raised by the library."""


class UnknownNode(PersistlabError, KeyError):
    pass


class NameCollision(PersistlabError, ValueError):
    pass


class InfeasibleError(PersistlabError):
    """The polytope is empty where a non-empty one was required."""


class UnboundedError(PersistlabError):
    """An LP turned out unbounded; all polytopes here are bounded, so this is a bug."""


class BudgetExceeded(PersistlabError):
    """An enumeration would exceed its configured size budget."""


class DimensionTooLarge(BudgetExceeded):
    """Vertex enumeration produced more intermediate rays than allowed."""


class NotValid(PersistlabError, ValueError):
    pass


class UnsupportedGraph(PersistlabError, ValueError):
    pass


class NotSeparable(PersistlabError):
    """The relaxation already equals the stable set polytope."""


class NoCore(PersistlabError):
    """No catalog graph separates the formulation from the edge relaxation."""


class PreconditionViolated(PersistlabError, ValueError):
    pass


class VerificationFailed(PersistlabError):
    """A certificate sub-check failed; ``check`` names the failing claim."""

    def __init__(self, check, detail=""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)
