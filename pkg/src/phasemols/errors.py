"""Exception hierarchy shared by every module of the package."""


class MolsError(ValueError):
    """Base class for all package errors."""


class NotPrime(MolsError):
    pass


class NotIrreducible(MolsError):
    pass


class NotPrimitive(MolsError):
    """Polynomial is irreducible but its root does not generate the multiplicative group."""


class BasisNotFound(MolsError):
    pass


class NotAdditive(MolsError):
    pass


class Degenerate(MolsError):
    """A matrix that must be invertible mod p is singular."""


class GeneratorsDegenerate(MolsError):
    pass


class OrderMismatch(MolsError):
    pass


class SizeMismatch(MolsError):
    pass


class MixedKind(MolsError):
    pass


class IncompatibleOps(MolsError):
    pass


class NotQubit(MolsError):
    pass


class NotCommutative(MolsError):
    pass


class EigenbasisFailure(MolsError):
    pass
