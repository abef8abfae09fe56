class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ValidationError(ValueError):
    """A genotype or solution file violates its structural invariants."""
