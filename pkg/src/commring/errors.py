"""Exception hierarchy for commring."""


class CommringError(Exception):
    """Base class for all library errors."""


class RingAxiomError(CommringError, ValueError):
    """A pair of tables fails one of the ring axioms.

    ``triple`` holds the first offending elements found by a row-major scan.
    """

    axiom = "ring axioms"

    def __init__(self, triple, detail=""):
        self.triple = tuple(int(t) for t in triple)
        msg = f"{self.axiom} violated at {self.triple}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotAbelianGroup(RingAxiomError):
    axiom = "abelian group law"


class NotAssociativeMul(RingAxiomError):
    axiom = "associativity of multiplication"


class NotDistributive(RingAxiomError):
    axiom = "distributivity"


class TableShapeError(CommringError, ValueError):
    """Tables are not square, have mismatched sizes or out-of-range entries."""


class NotPrime(CommringError, ValueError):
    pass


class OverflowGuard(CommringError, ValueError):
    """A construction would exceed the configured size cap."""


class UnsupportedOrder(CommringError, ValueError):
    pass


class BudgetExceeded(CommringError, RuntimeError):
    """The enumeration ran out of search nodes before finishing."""

    def __init__(self, nodes, partial=()):
        self.nodes = nodes
        self.partial = list(partial)
        super().__init__(f"node budget exhausted after {nodes} nodes "
                         f"({len(self.partial)} partial results, non-exhaustive)")


class EmptyVertexSet(CommringError, ValueError):
    """The commuting graph of a commutative ring has no vertices."""


class TooSmall(CommringError, ValueError):
    pass


class TooLarge(CommringError, ValueError):
    pass


class RingFormatError(CommringError, ValueError):
    """A ring file could not be parsed."""


class DimacsError(CommringError, ValueError):
    pass
