"""Exception hierarchy shared across the package."""


class LatnashError(Exception):
    """Base class for all errors raised by latnash."""


# --- order ---------------------------------------------------------------

class DuplicateElement(LatnashError):
    pass


class UnknownElement(LatnashError):
    pass


class CycleDetected(LatnashError):
    """Antisymmetry failure: the generating pairs contain a nontrivial cycle."""


class EmptySubset(LatnashError):
    pass


class ProductTooLarge(LatnashError):
    pass


class NotALattice(LatnashError):
    """An ambient poset lacks a join/meet that the operation needed."""


# --- topology ------------------------------------------------------------

class ElementOutOfCarrier(LatnashError):
    pass


class CarrierTooLarge(LatnashError):
    """Carrier exceeds the configured topology-generation cap."""


class CarrierMismatch(LatnashError):
    pass


class PreconditionViolated(LatnashError):
    pass


# --- omega (symbolic counterexample) --------------------------------------

class EmptySet(LatnashError):
    pass


# --- games ----------------------------------------------------------------

class ParseError(LatnashError):
    pass


class NonSurjectiveProjection(LatnashError):
    pass


class MissingPayoff(LatnashError):
    pass


class DuplicateProfile(LatnashError):
    pass


class InfeasibleProfile(LatnashError):
    pass


class EmptyPlayerSet(LatnashError):
    pass


class SpecOutOfRange(LatnashError):
    """Random-game spec parameter outside the supported bounds."""


class GenerationFailed(LatnashError):
    """Random generator could not satisfy an invariant within its retry budget."""


# --- cli / reports ---------------------------------------------------------

class UnknownGalleryName(LatnashError):
    pass


class InternalContradiction(LatnashError):
    """Two computations that must agree by construction disagreed.

    Raised instead of returning silently wrong data; seeing this exception
    means a bug in the engine, not bad user input.
    """
