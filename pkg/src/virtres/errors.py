"""Exception hierarchy; the CLI maps these onto exit codes."""


class VirtresError(Exception):
    pass


class InputError(VirtresError):
    """Malformed or out-of-bounds input data."""


class DomainError(VirtresError):
    """Operation applied outside its mathematical domain."""


class PreconditionError(VirtresError):
    """A stated hypothesis of a construction fails."""


class EquidimensionalityError(PreconditionError):
    """Certification pipeline refused: the variety is not equidimensional."""


class ObstructionError(VirtresError):
    """A homological obstruction rules the construction out (legitimate negative)."""

    def __init__(self, message, index=None, detail=None):
        super().__init__(message)
        self.index = index
        self.detail = detail


class LiftingError(VirtresError):
    """Chain-map lifting failed; indicates violated preconditions (internal)."""


class TheoremContradictionError(VirtresError):
    """An outcome contradicts a proved guarantee; treated as a bug sentinel."""
