"""Exception types shared across the package."""

from __future__ import annotations


class CommprobError(Exception):
    """Base class for every error raised by this package."""


class OrderCapExceeded(CommprobError):
    """A construction or enumeration would exceed its configured cap."""


class DegreeMismatch(CommprobError):
    """Permutations of different degrees were combined."""


class InvalidParameter(CommprobError):
    """A group-family parameter is out of range (e.g. dihedral degree < 3)."""


class ParseError(CommprobError):
    """Group-spec text failed to parse.

    ``position`` is a 0-based character offset into the input text and
    ``expected`` describes what the parser was looking for there.
    """

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"at offset {position}: expected {expected}")


class NotSubgroup(CommprobError):
    """An element set is not closed under the group operation."""


class NotNormal(CommprobError):
    """A subgroup is not invariant under conjugation."""


class ActionNotAutomorphism(CommprobError):
    """A semidirect-product action image does not preserve the table."""


class ActionNotHomomorphism(CommprobError):
    """A semidirect-product action is not multiplicative."""


class MethodDisagreement(CommprobError):
    """The exact cp methods disagree; this always signals an implementation bug."""


class FormulaMismatch(CommprobError):
    """Two closed forms that must agree produced different values (bug signal)."""


class OddPermutationType(CommprobError):
    """A cycle type of an odd permutation was passed where an even one is required."""
