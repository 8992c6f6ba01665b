"""Exception hierarchy shared by every module.

All errors derive from :class:`TorsionKitError` (itself a ``ValueError``) so
callers can catch input problems in one place; the CLI maps them to exit
code 2.
"""


class TorsionKitError(ValueError):
    pass


# polynomial ring
class ContextMismatch(TorsionKitError):
    pass


class UnknownVariable(TorsionKitError):
    pass


class PolySyntaxError(TorsionKitError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}")


class VariablePresent(TorsionKitError):
    pass


class NotHomogeneous(TorsionKitError):
    pass


class ZeroInput(TorsionKitError):
    pass


class NotAPower(TorsionKitError):
    """Raised by root extraction; ``witness`` is the first obstructing monomial."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


# symbols and relations
class ZeroEntry(TorsionKitError):
    pass


class WitnessFailure(TorsionKitError):
    pass


class VanishingImage(TorsionKitError):
    def __init__(self, message, name=None):
        self.name = name
        super().__init__(message)


class DividesF(TorsionKitError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class IndexOutOfRange(TorsionKitError):
    pass


class EquivalenceFailure(TorsionKitError):
    pass


# hypersurfaces
class ZeroParameter(TorsionKitError):
    pass


class CharDividesM(TorsionKitError):
    pass


class DegreeTooSmall(TorsionKitError):
    pass


class MissingPurePower(TorsionKitError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class DegreeBelowThreshold(TorsionKitError):
    pass


class NotDivisible(TorsionKitError):
    pass


class BadPrime(TorsionKitError):
    pass


class FieldMismatch(TorsionKitError):
    pass


class AmbientTooLarge(TorsionKitError):
    pass


# residues and bounds
class OrderIncomplete(TorsionKitError):
    pass


class OutOfRange(TorsionKitError):
    pass


class BadChar(TorsionKitError):
    pass
