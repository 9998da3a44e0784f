"""Exception hierarchy shared by every module."""


class ForgeError(Exception):
    """Base class for all errors raised by forge."""


class MalformedTable(ForgeError):
    pass


class NonAssociative(ForgeError):
    def __init__(self, i: int, j: int, k: int):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"(x{i}*x{j})*x{k} != x{i}*(x{j}*x{k})")


class SizeOverflow(ForgeError):
    pass


class CapExceeded(ForgeError):
    pass


class NotAGroup(ForgeError):
    pass


class NotAHom(ForgeError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        self.pair = pair
        super().__init__(message)


class NotAnIdeal(ForgeError):
    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"product {pair[0]}*{pair[1]} leaves the ideal")


class NotNormal(ForgeError):
    pass


class NotAnAction(ForgeError):
    pass


class CatalogInsufficient(ForgeError):
    """A factor search needs semigroups of an order the catalog does not hold.

    This is the "unknown" verdict of a bounded search, never a negative answer.
    """

    def __init__(self, order: int, reach: int):
        self.order, self.reach = order, reach
        super().__init__(
            f"needs all semigroups of order {order}; catalog/enumeration reach is {reach}")


class CorruptShard(ForgeError):
    pass


class TrivialInput(ForgeError):
    pass


class UnknownName(ForgeError):
    pass
