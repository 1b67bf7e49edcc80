"""Exception hierarchy.

Everything raised on bad input derives from :class:`InputError`; a failed
internal invariant (a would-be counterexample to a proved statement) raises
:class:`Violation`.  The CLI maps the two families to distinct exit codes.
"""


class ActionUncertaintyError(Exception):
    pass


class InputError(ActionUncertaintyError, ValueError):
    pass


class ParseError(InputError):
    pass


class AxiomViolation(InputError):
    pass


class NotClosed(InputError):
    pass


class CapExceeded(InputError):
    pass


class NotPrime(InputError):
    pass


class NoIrreducibleFound(InputError):
    pass


class NoSuchRoot(InputError):
    pass


class NotSemisimple(InputError):
    pass


class ActionAxiomViolation(InputError):
    pass


class NotTransitive(InputError):
    pass


class ZeroFunction(InputError):
    pass


class MismatchedContext(InputError):
    pass


class FieldMismatch(InputError):
    pass


class NotAbelian(InputError):
    pass


class NotHomomorphism(InputError):
    pass


class WrongDegreeSum(InputError):
    pass


class OrthogonalityFailure(InputError):
    pass


class FullSupport(InputError):
    pass


class Violation(ActionUncertaintyError, AssertionError):
    """An identity that the theory guarantees failed to hold."""
