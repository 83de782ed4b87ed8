"""Exception hierarchy shared by all coverlat modules."""


class CoverlatError(Exception):
    """Base class for every error raised by this package."""


class InputError(CoverlatError):
    """Malformed or invalid user-supplied data."""


class DuplicateLabel(InputError):
    pass


class UnknownLabel(InputError):
    pass


class EmptyBlock(InputError):
    pass


class NotACovering(InputError):
    pass


class NotIndependent(CoverlatError):
    pass


class IndexOutOfRange(CoverlatError, IndexError):
    pass


class InternalInconsistency(CoverlatError):
    """An invariant that construction should guarantee was found broken."""


class OutOfRange(InputError, ValueError):
    pass


class NotPrime(OutOfRange):
    pass


class InvalidGroup(InputError):
    pass


class TooLarge(CoverlatError):
    pass


class BudgetExceeded(CoverlatError):
    pass


class NotSimplified(CoverlatError):
    pass


class NotUniform(CoverlatError):
    """Uniform-lattice analysis does not apply; ``condition`` names the failed check."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        super().__init__(f"{condition}: {detail}" if detail else condition)
