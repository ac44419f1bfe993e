class ConceptCatError(Exception):
    """Base class for all library errors."""


class DimensionError(ConceptCatError, IndexError):
    """A set or index does not fit the index space of its context or lattice."""


class OwnershipError(ConceptCatError, ValueError):
    """A set owned by one context was used with another."""


class LatticeError(ConceptCatError, ValueError):
    """An order matrix is not a partial order, or lacks a join or meet."""


class NotPurifiedError(ConceptCatError, ValueError):
    pass


class ClassError(ConceptCatError, ValueError):
    """A map or mapping pair is not of the morphism class an operation requires."""


class FalsificationError(ConceptCatError, AssertionError):
    """Characterizations that should be equivalent disagreed on an instance.

    Carries the name of the claim, the per-form results and a description
    of the instance so the counterexample can be reproduced.
    """

    def __init__(self, claim: str, forms: dict, instance: object = None):
        self.claim = claim
        self.forms = dict(forms)
        self.instance = instance
        super().__init__(f"{claim}: characterizations disagree {self.forms} on {instance!r}")


class ParseError(ConceptCatError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class SizeLimitError(ConceptCatError, ValueError):
    """An exhaustive oracle or enumerator was asked for more than it can scan."""
