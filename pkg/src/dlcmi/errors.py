"""Exception hierarchy for the dlcmi workbench."""

from __future__ import annotations


class DlcmiError(Exception):
    """Base class for all workbench errors."""


class InvalidAlgebra(DlcmiError):
    """Operation tables are malformed (shape, range, or designated constants)."""


class NotALattice(InvalidAlgebra):
    """Meet/join tables violate a lattice law.

    Carries the failed axiom id and the witness tuple so callers can report it.
    """

    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"lattice law {axiom} fails at {witness}")


class MissingBottom(DlcmiError):
    """A bottom element is required but the algebra does not designate one."""


class PreconditionFailed(DlcmiError):
    """A documented operation precondition does not hold for the input."""


class VarietyPreconditionError(PreconditionFailed):
    """Input algebra is outside the variety an operation requires."""

    tag_name = "?"

    def __init__(self, detail: str = ""):
        msg = f"algebra is not in {self.tag_name}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotDLCMI(VarietyPreconditionError):
    tag_name = "DLCMI"


class NotWH(VarietyPreconditionError):
    tag_name = "WH"


class NotIDCRL(VarietyPreconditionError):
    tag_name = "IDCRL"


class NoMinimum(DlcmiError):
    """The candidate set {b : g(a,b) <= b} has no least element.

    ``reason`` distinguishes an empty set from a set whose minimal elements
    are incomparable.
    """

    def __init__(self, element: int, reason: str):
        assert reason in ("empty", "incomparable")
        self.element = element
        self.reason = reason
        super().__init__(f"no minimum at element {element} ({reason} candidate set)")


class InternalInconsistency(DlcmiError):
    """Two routes that must agree by theorem disagreed; indicates a bug."""


class CapExceeded(DlcmiError):
    """Requested enumeration size exceeds the configured cap."""


class UnsupportedTag(DlcmiError):
    """Enumeration is not implemented for the requested variety tag."""


class DocumentError(DlcmiError):
    """An on-disk document failed to parse; message carries the position."""
