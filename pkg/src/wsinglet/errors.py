"""Exception types shared across the package."""


class WSingletError(Exception):
    """Base class for library errors."""


class BudgetExceeded(WSingletError):
    """A computation would exceed the caller-supplied monomial budget."""


class UnsupportedMode(WSingletError):
    """A vertex-operator mode lies outside the support lattice."""


class SectorMismatch(WSingletError):
    """Two vectors live in sectors that the operation cannot pair."""


class NonHomogeneous(WSingletError):
    """A vector mixes conformal weights where a homogeneous one is required."""


class OutOfRange(WSingletError):
    """An index parameter is outside its allowed range."""


class IndexOutOfRange(OutOfRange):
    pass


class NotTopLevel(WSingletError):
    """Positive modes fail to annihilate a proposed top level."""


class NoSolution(WSingletError):
    """A linear system expected to be solvable is not."""


class NotFound(WSingletError):
    """A witness search ran out of candidates."""


# the Dyson oracle reports an oversized expansion under this name
TooLarge = BudgetExceeded
