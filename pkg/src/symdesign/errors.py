"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class DesignError(Exception):
    """Base class for every error raised by :mod:`symdesign`."""


class ParamViolation(DesignError, ValueError):
    pass


class AxiomViolation(DesignError):
    """A block list fails one of the symmetric-design axioms.

    ``axiom`` is the axiom number (1 block count, 2 replication,
    3 block intersection, 4 pair balance; 0 is used for a block that is not
    a k-subset). ``witness`` is a small dict naming the offending objects with
    1-based labels.
    """

    NAMES = {
        0: "block_size",
        1: "block_count",
        2: "replication",
        3: "block_intersection",
        4: "pair_balance",
    }

    def __init__(self, axiom: int, witness: dict, message: str = ""):
        self.axiom = axiom
        self.name = self.NAMES[axiom]
        self.witness = witness
        super().__init__(message or f"axiom {axiom} ({self.name}) fails: {witness}")


class ParseError(DesignError, ValueError):
    def __init__(self, message: str, line: int | None = None, position: int | None = None):
        self.line = line
        self.position = position
        where = ""
        if line is not None:
            where = f"line {line}"
            if position is not None:
                where += f", position {position}"
            where += ": "
        super().__init__(where + message)


class RepeatError(ParseError):
    pass


class RangeError(ParseError):
    pass


class DegreeMismatch(DesignError, ValueError):
    pass


class CapExceeded(DesignError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"group closure exceeds cap of {cap} elements")


class MissingFixCount(DesignError, KeyError):
    pass


class NotAutomorphism(DesignError):
    pass


class NotPrime(DesignError, ValueError):
    pass


class NotPrimeOrder(DesignError, ValueError):
    pass


class HypothesisViolation(DesignError, ValueError):
    pass


class UnsupportedExponent(DesignError, ValueError):
    pass


class MissingFact(DesignError):
    pass


class EqualPrimes(DesignError, ValueError):
    pass


class NotDifferenceSet(DesignError, ValueError):
    pass


class BudgetExceeded(DesignError):
    """A search ran out of nodes, time or result slots.

    The partial output is kept on the exception so that callers can still
    report it.
    """

    def __init__(self, reason: str, nodes: int, partial=None):
        self.reason = reason
        self.nodes = nodes
        self.partial = partial if partial is not None else []
        super().__init__(f"search budget exceeded ({reason}) after {nodes} nodes")
