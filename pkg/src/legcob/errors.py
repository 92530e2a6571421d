"""Shared error type for domain failures.

Anything a caller could plausibly catch and recover from (a malformed
front word, an infeasible decomposition, a numerically degenerate chord)
raises DomainError.  Plain ValueError / TypeError stay reserved for
outright API misuse.
"""


class DomainError(ValueError):
    pass
