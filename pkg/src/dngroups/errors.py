"""Exception hierarchy shared by all modules."""


class GroupError(Exception):
    """Base class for every error raised by dngroups."""


class DegreeMismatch(GroupError, ValueError):
    pass


class PointOutOfRange(GroupError, ValueError):
    pass


class OrderExceedsCap(GroupError):
    """The group is too large for an element scan under the given cap."""

    def __init__(self, order, cap, message=None):
        self.order = order
        self.cap = cap
        super().__init__(message or f"group order {order} exceeds element cap {cap}")


class NotTransitive(GroupError, ValueError):
    pass


class EqualPoints(GroupError, ValueError):
    pass


class PrimitiveInput(GroupError, ValueError):
    pass


class NotInvariant(GroupError, ValueError):
    pass


class SeedNotInGroup(GroupError, ValueError):
    pass


class BudgetExceeded(GroupError):
    def __init__(self, needed, budget, message=None):
        self.needed = needed
        self.budget = budget
        super().__init__(message or f"search needs {needed} colorings, budget is {budget}")


class PreconditionFailed(GroupError, ValueError):
    pass


class UnsupportedField(GroupError, ValueError):
    pass


class DegreeTooLarge(GroupError, ValueError):
    pass


class CycleSyntaxError(GroupError, ValueError):
    pass


class RepeatedPoint(CycleSyntaxError):
    pass


class ParseError(GroupError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MetadataMismatch(GroupError):
    def __init__(self, name, message):
        self.name = name
        super().__init__(f"{name}: {message}")
