"""Exception hierarchy shared by every stage of the pipeline."""


class HoastError(Exception):
    """Base class for all errors raised by hoast."""

    exit_code = 1


class SourceError(HoastError):
    """An error tied to a location in a source text."""

    def __init__(self, message, span=None):
        self.span = span
        self.message = message
        if span is not None:
            message = f"{span[0]}:{span[1]}: {message}"
        super().__init__(message)


class LexError(SourceError):
    pass


class ParseError(SourceError):
    def __init__(self, message, span=None, expectation=None):
        self.expectation = expectation
        super().__init__(message, span)


class DesugarError(SourceError):
    pass


class HolTypeError(SourceError):
    """Unification failure; carries the two clashing types."""

    def __init__(self, message, span=None, t1=None, t2=None):
        self.t1 = t1
        self.t2 = t2
        super().__init__(message, span)


class KindError(SourceError):
    pass


class BudgetExceeded(HoastError):
    """A value space or table is larger than the configured budget.

    ``size`` is the exact (arbitrary precision) size that was refused.
    """

    exit_code = 3

    def __init__(self, what, size, budget, ty=None):
        self.what = what
        self.size = size
        self.budget = budget
        self.ty = ty
        where = f" at type {ty}" if ty is not None else ""
        super().__init__(f"{what}{where}: size {size} exceeds budget {budget}")


class ExtensionBudgetExceeded(BudgetExceeded):
    def __init__(self, k, budget, ty=None):
        self.k = k
        super().__init__("two-valued extensions (undef entries)", k, budget, ty)


class SearchBudgetExceeded(BudgetExceeded):
    def __init__(self, undefined, budget):
        self.undefined = undefined
        super().__init__("stable model search (undefined points)", undefined, budget)


class IterationCapExceeded(HoastError):
    exit_code = 3


class InconsistentPair(HoastError):
    """A pair (lo, hi) with lo not below hi."""


class NotPropositional(HoastError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"not a propositional program: {reason}")
