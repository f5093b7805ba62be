"""Exception hierarchy.

Two families matter to callers.  ``LinextError`` subclasses that are not
``ConsistencyError`` mean the input violated a precondition.  A
``ConsistencyError`` means an identity that must hold did not, which points
at a bug rather than at bad input (the CLI maps these to exit code 2).
"""


class LinextError(Exception):
    """Base class for every error raised by this package."""


class ConsistencyError(LinextError):
    """A proven identity failed (non-integral count, leftover remainder...)."""


# poset core
class CycleError(LinextError, ValueError):
    pass


class ComparableError(LinextError, ValueError):
    pass


class NotACoverError(LinextError, ValueError):
    pass


class ElementIndexError(LinextError, IndexError):
    pass


# oracle
class LimitError(LinextError):
    pass


# d-complete posets
class NotDCompleteError(LinextError):
    def __init__(self, message, clause=None, witness=None):
        super().__init__(message)
        self.clause = clause
        self.witness = witness


class AmbiguityError(ConsistencyError):
    pass


class NotRootedTreeError(LinextError):
    pass


class NotRegularLabelingError(LinextError):
    pass


class UnsupportedLabelingError(LinextError):
    """The maj hook formula is only trusted on rooted trees or natural labelings."""


# folding
class NotBridgeError(LinextError):
    pass


class NotConnectedError(LinextError):
    pass


class NotPathOrderError(LinextError):
    pass


class NonIntegralError(ConsistencyError):
    pass


# mobiles
class NotTreePosetError(LinextError):
    pass


class MultipleAnchorError(LinextError):
    pass


class InterpolationMismatchError(ConsistencyError):
    pass


class ClosedFormMismatchError(ConsistencyError):
    pass


# q-analogues
class DivisionError(ConsistencyError):
    pass


class NonPolynomialError(ConsistencyError):
    pass


class NotMobileTreeError(LinextError):
    pass


class NotPartitionedRegularError(LinextError):
    pass


class DimensionError(LinextError, ValueError):
    pass


class IncompatibleLabelingError(LinextError):
    pass


class ParseError(LinextError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
