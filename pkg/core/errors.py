"""Exception hierarchy shared by services and the command line."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(DomainError):
    """A theorem or corollary hypothesis does not hold for the arguments."""


class ParseError(ValueError):
    """A probability or number string could not be parsed exactly."""


class UnknownClaimError(KeyError):
    """No check routine is registered for the claim id."""
