"""Exception hierarchy shared by all modules."""


class WfskitError(Exception):
    """Base class for every error raised by wfskit."""


class CategoryError(WfskitError):
    """Malformed finite category or functor data."""


class SimplicialError(WfskitError):
    """Malformed simplicial set, simplicial map or simplicial object."""


class ShapeError(WfskitError):
    """Inputs of the wrong shape for a construction (e.g. a non-span for a pushout)."""


class Unsupported(WfskitError):
    """The requested decision or construction is not available in this ambient."""


class MissingLimit(WfskitError):
    """A base category lacks a limit or colimit that a construction needs."""


class BudgetExceeded(WfskitError):
    """An exhaustive search ran past its partial-assignment budget."""

    def __init__(self, budget, explored=None):
        super().__init__(f"search budget of {budget} partial assignments exhausted")
        self.budget = budget
        self.explored = explored if explored is not None else budget
