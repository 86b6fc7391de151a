"""Exception hierarchy for wedgedeg."""


class WedgedegError(Exception):
    """Base class for all library errors."""


class InputError(WedgedegError):
    """Malformed or mathematically invalid input."""


class ResourceLimit(WedgedegError):
    """A configured size or enumeration cap was exceeded."""


class NotAGroup(InputError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class NotASubgroup(InputError):
    pass


class NotNormal(InputError):
    pass


class TrivialGroupHasNoPrime(InputError):
    pass


class NotCoprime(InputError):
    pass


class ParseError(InputError):
    pass


class WrongMode(InputError):
    pass


class MissingExteriorStructure(InputError):
    pass


class IncompleteTable(InputError):
    pass


class SizeLimitExceeded(ResourceLimit):
    pass


class GroupTooLarge(ResourceLimit):
    pass


class TooLarge(ResourceLimit):
    pass


class LimitExceeded(ResourceLimit):
    def __init__(self, limit):
        super().__init__(f"coset enumeration needs more than {limit} cosets")
        self.limit = limit
