"""
Exception hierarchy for LimGrp

Outcomes such as "not a member" or "none in budget" are results, not errors.
Exceptions are reserved for bad input and violated preconditions.
"""


class LimGrpError(Exception):
    """Base class for all errors raised by the toolkit"""


class InputError(LimGrpError):
    """Malformed or inconsistent input (unknown generator, arity mismatch, bad file)"""


class PreconditionError(LimGrpError):
    """A documented precondition of an operation does not hold"""


class RelatorsNotKilled(PreconditionError):
    """Generator images do not define a homomorphism"""

    def __init__(self, violated):
        self.violated = tuple(violated)
        words = ", ".join(str(word) for word in self.violated)
        super().__init__(f"Relators not killed by the images: {words}")


class MalformedCertificate(InputError):
    """CLG certificate whose recursion is not well founded"""
