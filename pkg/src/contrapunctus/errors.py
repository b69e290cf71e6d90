"""Domain exceptions shared across the engine.

Every error carries a short machine-readable ``reason`` tag that the CLI
and the HTTP API surface verbatim.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Base class for all engine-level (non-usage) errors."""

    reason = "DomainError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.reason)


class ModulusMismatchError(DomainError):
    reason = "ModulusMismatch"


class NotRigidError(DomainError):
    """The dichotomy has a nontrivial setwise stabilizer."""

    reason = "NotRigid"


class NoAutocomplementarityError(DomainError):
    """No affine map exchanges the two halves of the dichotomy."""

    reason = "NoAutocomplementarity"


class DissonantInputError(DomainError):
    """Successor queries require a consonant starting interval."""

    reason = "DissonantInput"


class UnsatisfiableError(DomainError):
    """Constrained generation ran out of admissible continuations."""

    reason = "Unsatisfiable"


class OutOfDomainError(DomainError):
    """A value fell outside the domain of a world or morphism."""

    reason = "OutOfDomain"


class InductionFailedError(DomainError):
    """A vertex map does not extend to a counterpoint world morphism."""

    reason = "InductionFailed"


class SearchExhaustedError(DomainError):
    """An existence search ended without a witness."""

    reason = "SearchExhausted"


class ResourceGuardError(DomainError):
    """A computation was refused because it exceeds the default size guard."""

    reason = "ResourceGuard"


class SchemaError(DomainError):
    """A document does not follow the published JSON layout."""

    reason = "Schema"


class UnknownWorldError(DomainError):
    reason = "UnknownWorld"
