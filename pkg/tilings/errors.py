"""
Exception hierarchy for tilinglab. Every library error carries a short
machine-readable `kind` used in CLI error objects.
"""


class TilingLabError(Exception):
    kind = "tilinglab"

    def to_dict(self):
        return {'kind': self.kind, 'message': str(self)}


class SingularLatticeError(TilingLabError):
    kind = "singular-lattice"


class DomainError(TilingLabError):
    kind = "domain"


class CapacityError(TilingLabError):
    kind = "capacity"

    def __init__(self, message, cap):
        super().__init__(f"{message} (cap {cap})")
        self.cap = cap

    def to_dict(self):
        return {'kind': self.kind, 'message': str(self), 'cap': self.cap}


class PreconditionError(TilingLabError):
    kind = "precondition"


class DegenerateError(TilingLabError):
    kind = "degenerate"


class NonDiscreteIntersectionError(TilingLabError):
    kind = "non-discrete-intersection"
